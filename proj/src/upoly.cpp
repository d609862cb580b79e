#include "exactsdp/upoly.hpp"

#include <algorithm>

#include "exactsdp/errors.hpp"

namespace exactsdp {

void UPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UPoly::leading() const {
  if (c_.empty()) fail(ErrorKind::size, "leading coefficient of zero");
  return c_.back();
}

UPoly UPoly::operator+(const UPoly& other) const {
  std::vector<Rational> out(std::max(c_.size(), other.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
  for (std::size_t i = 0; i < other.c_.size(); ++i) out[i] += other.c_[i];
  return UPoly(std::move(out));
}

UPoly UPoly::operator-(const UPoly& other) const { return *this + (-other); }

UPoly UPoly::operator-() const {
  UPoly out(*this);
  for (auto& v : out.c_) v = -v;
  return out;
}

UPoly UPoly::operator*(const UPoly& other) const {
  if (c_.empty() || other.c_.empty()) return UPoly();
  std::vector<Rational> out(c_.size() + other.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < other.c_.size(); ++j)
      out[i + j] += c_[i] * other.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::operator*(const Rational& s) const {
  if (s == 0) return UPoly();
  UPoly out(*this);
  for (auto& v : out.c_) v *= s;
  return out;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    out[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return UPoly(std::move(out));
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::pair<Rational, Rational> UPoly::evaluate_interval(
    const Rational& xlo, const Rational& xhi) const {
  // Interval Horner; [alo, ahi] * [xlo, xhi] + c taken with exact bounds.
  Rational alo(0), ahi(0);
  for (std::size_t i = c_.size(); i-- > 0;) {
    Rational p1 = alo * xlo, p2 = alo * xhi, p3 = ahi * xlo, p4 = ahi * xhi;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    alo = lo + c_[i];
    ahi = hi + c_[i];
  }
  return {alo, ahi};
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& divisor) const {
  if (divisor.is_zero()) fail(ErrorKind::size, "division by zero polynomial");
  UPoly rem(*this);
  long dq = degree() - divisor.degree();
  if (dq < 0) return {UPoly(), rem};
  std::vector<Rational> quot(static_cast<std::size_t>(dq) + 1, Rational(0));
  const Rational& lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    long shift = rem.degree() - divisor.degree();
    Rational factor = rem.leading() / lead;
    quot[static_cast<std::size_t>(shift)] = factor;
    // rem -= factor * t^shift * divisor
    for (std::size_t i = 0; i < divisor.c_.size(); ++i)
      rem.c_[i + static_cast<std::size_t>(shift)] -= factor * divisor.c_[i];
    rem.normalize();
  }
  return {UPoly(std::move(quot)), rem};
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  Integer den_lcm(1), num_gcd(0);
  for (const auto& v : c_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            v.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            v.get_num().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading() < 0) scale = -scale;
  return *this * scale;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * (Rational(1) / leading());
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational v = c_[i];
    if (out.empty()) {
      if (v < 0) { out += "-"; v = -v; }
    } else {
      out += v < 0 ? " - " : " + ";
      if (v < 0) v = -v;
    }
    if (i == 0 || v != 1) out += rat_to_string(v);
    if (i > 0) {
      if (v != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  a = a.primitive();
  b = b.primitive();
  while (!b.is_zero()) {
    UPoly r = a.mod(b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::size, "squarefree part of zero");
  if (p.degree() == 0) return UPoly::constant(Rational(1));
  UPoly g = upoly_gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

XgcdResult upoly_xgcd(const UPoly& a, const UPoly& b) {
  // Extended Euclid on (r0, r1) with Bezout rows (s, t).
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Rational(1)), s1 = UPoly::zero();
  UPoly t0 = UPoly::zero(), t1 = UPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [quot, rem] = r0.divmod(r1);
    UPoly s2 = s0 - quot * s1;
    UPoly t2 = t0 - quot * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    const Rational inv_lead = Rational(1) / r0.leading();
    r0 = r0 * inv_lead;
    s0 = s0 * inv_lead;
    t0 = t0 * inv_lead;
  }
  return XgcdResult{std::move(r0), std::move(s0), std::move(t0)};
}

UPoly upoly_inverse_mod(const UPoly& a, const UPoly& modulus) {
  XgcdResult x = upoly_xgcd(a.mod(modulus), modulus);
  if (x.g.degree() != 0)
    fail(ErrorKind::field, "polynomial is not invertible modulo the modulus");
  return x.s.mod(modulus);
}

Rational resultant(UPoly f, UPoly g) {
  // Res(f, g) = lc(f)^deg g * prod over roots a of f of g(a).
  if (f.is_zero() || g.is_zero()) return Rational(0);
  if (f.degree() == 0) {
    Rational out(1);
    for (long i = 0; i < g.degree(); ++i) out *= f.leading();
    return out;
  }
  Rational acc(1);
  while (true) {
    if (g.degree() == 0) {
      // Res(f, c) = c^deg f
      for (long i = 0; i < f.degree(); ++i) acc *= g.leading();
      break;
    }
    UPoly r = f.mod(g);
    if (r.is_zero()) return Rational(0);
    // Res(f, g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) Res(g, r)
    long df = f.degree(), dg = g.degree(), dr = r.degree();
    if ((df % 2) && (dg % 2)) acc = -acc;
    for (long i = 0; i < df - dr; ++i) acc *= g.leading();
    f = std::move(g);
    g = std::move(r);
  }
  return acc;
}

UPoly lagrange_interpolate(const std::vector<Rational>& xs,
                           const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    fail(ErrorKind::size, "interpolation needs matching nonempty data");
  UPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UPoly basis = UPoly::constant(Rational(1));
    Rational denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UPoly::linear_root(xs[j]);
      denom *= xs[i] - xs[j];
    }
    acc = acc + basis * (ys[i] / denom);
  }
  return acc;
}

} // namespace exactsdp
