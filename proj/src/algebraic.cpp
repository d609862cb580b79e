#include "exactsdp/algebraic.hpp"

#include <algorithm>

#include "exactsdp/errors.hpp"

namespace exactsdp {

namespace {

// Primitive integer form scaled by a POSITIVE rational only, so signs of
// values are preserved (required inside Sturm chains).
UPoly positive_primitive(const UPoly& p) {
  if (p.is_zero()) return p;
  UPoly prim = p.primitive();
  if ((p.leading() < 0) != (prim.leading() < 0)) return -prim;
  return prim;
}

int sign_of(const Rational& v) { return sgn(v); }

long variations(const std::vector<int>& signs) {
  long count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

} // namespace

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(positive_primitive(p));
  UPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(positive_primitive(d));
  while (true) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain[chain.size() - 1];
    UPoly r = a.mod(b);
    if (r.is_zero()) break;
    chain.push_back(positive_primitive(-r));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

long sturm_count(const std::vector<UPoly>& chain, const Rational& a,
                 const Rational& b) {
  if (chain.empty()) return 0;
  if (!(a < b)) fail(ErrorKind::size, "sturm_count needs a < b");
  std::vector<int> sa, sb;
  sa.reserve(chain.size());
  sb.reserve(chain.size());
  for (const auto& s : chain) {
    sa.push_back(sign_of(s.evaluate(a)));
    sb.push_back(sign_of(s.evaluate(b)));
  }
  if (sa[0] == 0 || sb[0] == 0)
    fail(ErrorKind::size, "sturm_count endpoint is a root");
  return variations(sa) - variations(sb);
}

long sturm_count_all(const std::vector<UPoly>& chain) {
  if (chain.empty()) return 0;
  std::vector<int> sneg, spos;
  for (const auto& s : chain) {
    if (s.is_zero()) {
      sneg.push_back(0);
      spos.push_back(0);
      continue;
    }
    int lead = sign_of(s.leading());
    spos.push_back(lead);
    sneg.push_back(s.degree() % 2 == 0 ? lead : -lead);
  }
  return variations(sneg) - variations(spos);
}

Rational cauchy_root_bound(const UPoly& p) {
  if (p.is_zero() || p.degree() == 0) return Rational(1);
  Rational maxratio(0);
  for (long i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(i)) / p.leading());
    if (r > maxratio) maxratio = r;
  }
  return maxratio + 1;
}

namespace {

std::vector<IsolatingInterval> isolate_squarefree(const UPoly& p);

// Isolation after extracting the rational root r: isolate the quotient and
// push its intervals off r so everything stays disjoint.
std::vector<IsolatingInterval> isolate_with_rational_root(
    const UPoly& p, const Rational& r) {
  UPoly quotient = p.divmod(UPoly::linear_root(r)).first;
  std::vector<IsolatingInterval> rest = isolate_squarefree(positive_primitive(quotient));
  for (auto& iv : rest) {
    if (iv.is_point() || !(iv.lo <= r && r <= iv.hi)) continue;
    // Bisect until r lies strictly outside (an endpoint equal to r would be
    // a root of p); the interval's own root differs from r, so the loop
    // terminates.
    int slo = sign_of(quotient.evaluate(iv.lo));
    while (!iv.is_point() && iv.lo <= r && r <= iv.hi) {
      Rational mid = iv.midpoint();
      if (mid == r) mid = (iv.lo + mid) / 2;
      int sm = sign_of(quotient.evaluate(mid));
      if (sm == 0) { iv.lo = iv.hi = mid; break; }
      if (sm == slo) iv.lo = mid; else iv.hi = mid;
    }
  }
  rest.push_back({r, r});
  std::sort(rest.begin(), rest.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) {
              return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
            });
  return rest;
}

std::vector<IsolatingInterval> isolate_squarefree(const UPoly& p) {
  std::vector<IsolatingInterval> out;
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    Rational r = -p.coeff(0) / p.coeff(1);
    out.push_back({r, r});
    return out;
  }
  Rational bound = cauchy_root_bound(p) + 1;
  while (p.evaluate(-bound) == 0 || p.evaluate(bound) == 0) bound += 1;
  std::vector<UPoly> chain = sturm_chain(p);
  std::vector<std::pair<Rational, Rational>> queue;
  queue.emplace_back(-bound, bound);
  while (!queue.empty()) {
    auto [lo, hi] = queue.back();
    queue.pop_back();
    long count = sturm_count(chain, lo, hi);
    if (count == 0) continue;
    if (count == 1) {
      out.push_back({lo, hi});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    if (p.evaluate(mid) == 0) return isolate_with_rational_root(p, mid);
    queue.emplace_back(lo, mid);
    queue.emplace_back(mid, hi);
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) {
              return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
            });
  return out;
}

// Largest integer <= a.
Integer floor_int(const Rational& a) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_num().get_mpz_t(),
             a.get_den().get_mpz_t());
  return out;
}

// Certified rational-root test on an open isolating interval of the
// integer-primitive squarefree p: every rational root is an integer
// multiple of 1/lc (rational root theorem), so once the interval holds at
// most one such multiple a single exact evaluation decides. Collapses the
// interval to a point when the root is rational.
void certify_rational(const UPoly& p, IsolatingInterval& iv) {
  if (iv.is_point()) return;
  const Integer lc(p.leading().get_num());
  const int slo = sign_of(p.evaluate(iv.lo));
  while (true) {
    const Rational scaled_lo = iv.lo * lc;
    const Rational scaled_hi = iv.hi * lc;
    // Integers k with lo * lc < k < hi * lc.
    const Integer kmin = floor_int(scaled_lo) + 1;
    const Integer kmax = -floor_int(-scaled_hi) - 1;
    if (kmin > kmax) return; // no admissible denominator: root irrational
    if (kmin == kmax) {
      Rational cand(kmin, lc);
      cand.canonicalize();
      if (p.evaluate(cand) == 0) iv.lo = iv.hi = cand;
      return;
    }
    const Rational mid = iv.midpoint();
    const Rational pm = p.evaluate(mid);
    if (pm == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    if (sign_of(pm) == slo) iv.lo = mid; else iv.hi = mid;
  }
}

} // namespace

std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::size, "cannot isolate roots of zero");
  const UPoly sf = positive_primitive(squarefree_part(p));
  std::vector<IsolatingInterval> out = isolate_squarefree(sf);
  for (IsolatingInterval& iv : out) certify_rational(sf, iv);
  return out;
}

AlgebraicNumber::AlgebraicNumber(const UPoly& poly, IsolatingInterval interval)
    : poly_(positive_primitive(squarefree_part(poly))),
      interval_(std::move(interval)) {
  if (interval_.is_point()) {
    sign_lo_ = 0;
    return;
  }
  int slo = sign_of(poly_.evaluate(interval_.lo));
  int shi = sign_of(poly_.evaluate(interval_.hi));
  if (slo == 0 || shi == 0)
    fail(ErrorKind::size, "isolating interval endpoint is a root");
  if (slo == shi)
    fail(ErrorKind::size, "interval does not isolate a sign change");
  sign_lo_ = slo;
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& r) {
  return AlgebraicNumber(UPoly::linear_root(r), {r, r});
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) fail(ErrorKind::size, "value of irrational number");
  return interval_.lo;
}

void AlgebraicNumber::refine_once() {
  if (interval_.is_point()) return;
  Rational mid = interval_.midpoint();
  int sm = sign_of(poly_.evaluate(mid));
  if (sm == 0) {
    interval_.lo = interval_.hi = mid;
    sign_lo_ = 0;
    return;
  }
  if (sm == sign_lo_) interval_.lo = mid; else interval_.hi = mid;
}

void AlgebraicNumber::refine_below(const Rational& bound) {
  while (!interval_.is_point() && interval_.width() > bound) refine_once();
}

std::string AlgebraicNumber::decimal(int digits) const {
  if (is_rational()) return decimal_string(interval_.lo, digits);
  AlgebraicNumber copy(*this);
  while (true) {
    if (copy.is_rational()) return decimal_string(copy.interval_.lo, digits);
    Rational alo = abs(copy.interval_.lo), ahi = abs(copy.interval_.hi);
    Rational mag = std::max(alo, ahi);
    if (mag < 1) mag = 1;
    Rational target = mag;
    for (int i = 0; i < digits + 3; ++i) target /= 10;
    if (copy.interval_.width() <= target)
      return decimal_string(copy.interval_.midpoint(), digits);
    copy.refine_once();
  }
}

int sign_at(const UPoly& g, const AlgebraicNumber& alpha) {
  if (g.is_zero()) return 0;
  if (alpha.is_rational()) return sign_of(g.evaluate(alpha.rational_value()));
  UPoly h = upoly_gcd(g, alpha.poly());
  if (h.degree() >= 1) {
    int slo = sign_of(h.evaluate(alpha.interval().lo));
    int shi = sign_of(h.evaluate(alpha.interval().hi));
    // h divides the squarefree defining polynomial, so endpoints are not
    // roots of h and a sign change certifies h(alpha) = 0.
    if (slo * shi < 0) return 0;
  }
  AlgebraicNumber copy(alpha);
  while (true) {
    auto [lo, hi] = g.evaluate_interval(copy.interval().lo, copy.interval().hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    copy.refine_once();
    if (copy.is_rational()) return sign_of(g.evaluate(copy.rational_value()));
  }
}

namespace {

// Index of the isolating interval of `roots` that alpha (a root of the
// isolated polynomial) falls into, refining alpha as needed.
std::size_t locate_root(const std::vector<IsolatingInterval>& roots,
                        AlgebraicNumber& alpha) {
  while (true) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      if (alpha.is_rational()) {
        const Rational v = alpha.rational_value();
        if (r.is_point() ? v == r.lo : (r.lo < v && v < r.hi)) return i;
        continue;
      }
      if (r.is_point()) {
        // Deciding alpha == r needs an exact test; the interval alone
        // cannot collapse onto a rational value.
        if (alpha.interval().lo < r.lo && r.lo < alpha.interval().hi &&
            sign_at(UPoly::linear_root(r.lo), alpha) == 0)
          return i;
        continue;
      }
      if (r.lo <= alpha.interval().lo && alpha.interval().hi <= r.hi) return i;
    }
    alpha.refine_once();
  }
}

} // namespace

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) {
    const Rational va = a.rational_value(), vb = b.rational_value();
    return va < vb ? -1 : (va == vb ? 0 : 1);
  }
  if (b.is_rational()) {
    return sign_at(UPoly::linear_root(b.rational_value()), a);
  }
  if (a.is_rational()) {
    return -sign_at(UPoly::linear_root(a.rational_value()), b);
  }
  // Equality requires a shared factor of the defining polynomials.
  UPoly h = upoly_gcd(a.poly(), b.poly());
  if (h.degree() >= 1 && sign_at(h, a) == 0 && sign_at(h, b) == 0) {
    std::vector<IsolatingInterval> roots = isolate_real_roots(h);
    AlgebraicNumber ca(a), cb(b);
    if (locate_root(roots, ca) == locate_root(roots, cb)) return 0;
  }
  // Distinct values: refine until the enclosures separate. When either side
  // collapses to a point, a touching endpoint already separates them.
  AlgebraicNumber ca(a), cb(b);
  while (true) {
    if (ca.interval().hi <= cb.interval().lo) return -1;
    if (cb.interval().hi <= ca.interval().lo) return 1;
    ca.refine_once();
    cb.refine_once();
  }
}

AlgebraicNumber evaluate_rational_function(const UPoly& num, const UPoly& den,
                                           const AlgebraicNumber& alpha) {
  if (alpha.is_rational()) {
    Rational d = den.evaluate(alpha.rational_value());
    if (d == 0) fail(ErrorKind::size, "denominator vanishes at the point");
    return AlgebraicNumber::from_rational(num.evaluate(alpha.rational_value()) / d);
  }
  const UPoly& q = alpha.poly();
  long d = q.degree();
  // V(tau) = prod over roots a of q of (den(a) tau - num(a)); a polynomial of
  // degree <= d in tau recovered by interpolation. Res(q, h) =
  // lc(q)^(deg h) prod h(a) gives each evaluation.
  std::vector<Rational> xs, ys;
  for (long j = 0; j <= d; ++j) {
    Rational tau(j);
    UPoly h = den * tau - num;
    Rational value;
    if (h.is_zero()) {
      value = 0;
    } else {
      Rational r = resultant(q, h);
      Rational scale(1);
      for (long i = 0; i < h.degree(); ++i) scale *= q.leading();
      value = r / scale;
    }
    xs.push_back(tau);
    ys.push_back(value);
  }
  UPoly value_poly = lagrange_interpolate(xs, ys);
  if (value_poly.is_zero())
    fail(ErrorKind::size, "denominator vanishes at a conjugate point");
  UPoly vsf = positive_primitive(squarefree_part(value_poly));
  // Pin down which root of vsf the value is, by shrinking an exact enclosure.
  AlgebraicNumber acopy(alpha);
  std::vector<IsolatingInterval> roots = isolate_squarefree(vsf);
  while (true) {
    auto dlo_dhi = den.evaluate_interval(acopy.interval().lo, acopy.interval().hi);
    if (dlo_dhi.first <= 0 && dlo_dhi.second >= 0) {
      acopy.refine_once();
      if (acopy.is_rational())
        return evaluate_rational_function(num, den, acopy);
      continue;
    }
    auto nlo_nhi = num.evaluate_interval(acopy.interval().lo, acopy.interval().hi);
    Rational q1 = nlo_nhi.first / dlo_dhi.first;
    Rational q2 = nlo_nhi.first / dlo_dhi.second;
    Rational q3 = nlo_nhi.second / dlo_dhi.first;
    Rational q4 = nlo_nhi.second / dlo_dhi.second;
    Rational vlo = std::min(std::min(q1, q2), std::min(q3, q4));
    Rational vhi = std::max(std::max(q1, q2), std::max(q3, q4));
    // The value lies in [vlo, vhi]; accept once exactly one candidate root
    // interval meets the enclosure and the enclosure sits inside it.
    std::size_t hits = 0, hit_index = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      bool meets = r.is_point() ? (vlo <= r.lo && r.lo <= vhi)
                                : (r.hi > vlo && r.lo < vhi);
      if (meets) {
        ++hits;
        hit_index = i;
      }
    }
    if (hits == 1) {
      const auto& r = roots[hit_index];
      if (r.is_point()) return AlgebraicNumber::from_rational(r.lo);
      if (r.lo < vlo && vhi < r.hi) {
        AlgebraicNumber out(vsf, r);
        return out;
      }
    }
    acopy.refine_once();
  }
}

IsolatingInterval rational_function_enclosure(const UPoly& num,
                                              const UPoly& den,
                                              AlgebraicNumber& alpha,
                                              const Rational& bound) {
  if (alpha.is_rational()) {
    Rational v = num.evaluate(alpha.rational_value()) /
                 den.evaluate(alpha.rational_value());
    return {v, v};
  }
  while (true) {
    auto [dlo, dhi] = den.evaluate_interval(alpha.interval().lo,
                                            alpha.interval().hi);
    if (dlo <= 0 && dhi >= 0) {
      alpha.refine_once();
      if (alpha.is_rational())
        return rational_function_enclosure(num, den, alpha, bound);
      continue;
    }
    auto [nlo, nhi] = num.evaluate_interval(alpha.interval().lo,
                                            alpha.interval().hi);
    Rational q1 = nlo / dlo, q2 = nlo / dhi, q3 = nhi / dlo, q4 = nhi / dhi;
    Rational vlo = std::min(std::min(q1, q2), std::min(q3, q4));
    Rational vhi = std::max(std::max(q1, q2), std::max(q3, q4));
    if (vhi - vlo <= bound) return {vlo, vhi};
    alpha.refine_once();
    if (alpha.is_rational())
      return rational_function_enclosure(num, den, alpha, bound);
  }
}

std::string rational_function_decimal(const UPoly& num, const UPoly& den,
                                      AlgebraicNumber alpha, int digits) {
  if (alpha.is_rational()) {
    Rational d = den.evaluate(alpha.rational_value());
    return decimal_string(num.evaluate(alpha.rational_value()) / d, digits);
  }
  Rational bound(1);
  while (true) {
    for (int i = 0; i < digits + 3; ++i) bound /= 10;
    IsolatingInterval enc = rational_function_enclosure(num, den, alpha, bound);
    Rational elo = abs(enc.lo), ehi = abs(enc.hi);
    Rational mag = std::max(elo, ehi);
    if (mag < 1) mag = 1;
    Rational target = mag;
    for (int i = 0; i < digits + 3; ++i) target /= 10;
    if (enc.hi - enc.lo <= target)
      return decimal_string((enc.lo + enc.hi) / 2, digits);
    bound = target / 10;
  }
}

} // namespace exactsdp
