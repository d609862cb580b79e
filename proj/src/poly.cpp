#include "exactsdp/poly.hpp"

#include <algorithm>

#include "exactsdp/errors.hpp"

namespace exactsdp {

bool Monomial::is_one() const {
  for (uint16_t e : exps_)
    if (e) return false;
  return true;
}

uint32_t Monomial::degree() const {
  uint32_t d = 0;
  for (uint16_t e : exps_) d += e;
  return d;
}

uint32_t Monomial::degree_in(std::size_t from, std::size_t to) const {
  uint32_t d = 0;
  for (std::size_t i = from; i < to && i < exps_.size(); ++i) d += exps_[i];
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i)
    out.exps_[i] = static_cast<uint16_t>(out.exps_[i] + other.exps_[i]);
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i)
    out.exps_[i] = static_cast<uint16_t>(out.exps_[i] - other.exps_[i]);
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < out.exps_.size(); ++i)
    out.exps_[i] = std::max(out.exps_[i], b.exps_[i]);
  return out;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    if (a.exps_[i] && b.exps_[i]) return false;
  return true;
}

namespace {

int compare_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// Graded reverse lex on the variable subset selected by `take` (null = all).
int compare_grevlex_subset(const Monomial& a, const Monomial& b,
                           const std::vector<bool>* take, bool taken_value) {
  uint32_t da = 0, db = 0;
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (take && (*take)[i] != taken_value) continue;
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  // Ties: last differing selected variable; smaller exponent there wins.
  for (std::size_t j = a.nvars(); j-- > 0;) {
    if (take && (*take)[j] != taken_value) continue;
    if (a[j] != b[j]) return a[j] < b[j] ? 1 : -1;
  }
  return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::lex:
      return compare_lex(a, b);
    case Kind::grevlex:
      return compare_grevlex_subset(a, b, nullptr, true);
    case Kind::block_elim: {
      int front = compare_grevlex_subset(a, b, &eliminated_, true);
      if (front != 0) return front;
      return compare_grevlex_subset(a, b, &eliminated_, false);
    }
  }
  return 0;
}

std::string MonomialOrder::cache_key() const {
  switch (kind_) {
    case Kind::lex: return "lex";
    case Kind::grevlex: return "grevlex";
    case Kind::block_elim: {
      std::string key = "elim:";
      for (bool e : eliminated_) key += e ? '1' : '0';
      return key;
    }
  }
  return "?";
}

MultiPoly MultiPoly::constant(SpacePtr space, MonomialOrder order,
                              const Rational& c) {
  MultiPoly p(std::move(space), std::move(order));
  if (c != 0) p.terms_.push_back({Monomial(p.space_->size()), c});
  return p;
}

MultiPoly MultiPoly::variable(SpacePtr space, MonomialOrder order,
                              std::size_t var, uint16_t power) {
  MultiPoly p(std::move(space), std::move(order));
  if (var >= p.space_->size())
    fail(ErrorKind::size, "variable index out of range");
  Monomial m(p.space_->size());
  m[var] = power;
  if (power == 0) m = Monomial(p.space_->size());
  p.terms_.push_back({std::move(m), Rational(1)});
  return p;
}

MultiPoly MultiPoly::from_terms(SpacePtr space, MonomialOrder order,
                                std::vector<Term> terms) {
  MultiPoly p(std::move(space), std::move(order));
  for (auto& t : terms)
    if (t.mono.nvars() != p.space_->size())
      fail(ErrorKind::size, "term arity does not match space");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono.is_one()) return terms_[0].coeff;
  fail(ErrorKind::size, "polynomial is not constant");
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) fail(ErrorKind::size, "leading term of zero polynomial");
  return terms_.front();
}

uint32_t MultiPoly::total_degree() const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

uint32_t MultiPoly::degree_in_var(std::size_t var) const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<uint32_t>(d, t.mono[var]);
  return d;
}

uint32_t MultiPoly::degree_in_range(std::size_t from, std::size_t to) const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(from, to));
  return d;
}

void MultiPoly::assert_compatible(const MultiPoly& other) const {
  if (!space_ || !other.space_)
    fail(ErrorKind::size, "operation on default-constructed polynomial");
  if (space_ != other.space_ && *space_ != *other.space_)
    fail(ErrorKind::size, "polynomials live in different rings");
  if (order_ != other.order_)
    fail(ErrorKind::size, "polynomials carry different term orders");
}

void MultiPoly::normalize() {
  auto desc = [this](const Term& a, const Term& b) {
    return order_.compare(a.mono, b.mono) > 0;
  };
  std::sort(terms_.begin(), terms_.end(), desc);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  assert_compatible(other);
  MultiPoly out(space_, order_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int cmp = order_.compare(terms_[i].mono, other.terms_[j].mono);
    if (cmp > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.terms_.push_back(other.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + other.terms_[j].coeff;
      if (c != 0) out.terms_.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) out.terms_.push_back(other.terms_[j]);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
  return *this + (-other);
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  assert_compatible(other);
  MultiPoly out(space_, order_);
  if (terms_.empty() || other.terms_.empty()) return out;
  out.terms_.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      out.terms_.push_back({a.mono * b.mono, a.coeff * b.coeff});
  out.normalize();
  return out;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  if (c == 0) return zero(space_, order_);
  MultiPoly out(*this);
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

MultiPoly MultiPoly::sub_mul(const Rational& c, const Monomial& mono,
                             const MultiPoly& other) const {
  assert_compatible(other);
  MultiPoly out(space_, order_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    Monomial mj = other.terms_[j].mono * mono;
    int cmp = order_.compare(terms_[i].mono, mj);
    if (cmp > 0) {
      out.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.terms_.push_back({std::move(mj), -(c * other.terms_[j].coeff)});
      ++j;
    } else {
      Rational v = terms_[i].coeff - c * other.terms_[j].coeff;
      if (v != 0) out.terms_.push_back({terms_[i].mono, std::move(v)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j)
    out.terms_.push_back(
        {other.terms_[j].mono * mono, -(c * other.terms_[j].coeff)});
  return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly out(space_, order_);
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Term d;
    d.mono = t.mono;
    d.coeff = t.coeff * Rational(t.mono[var]);
    d.mono[var] = static_cast<uint16_t>(d.mono[var] - 1);
    out.terms_.push_back(std::move(d));
  }
  out.normalize();
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != space_->size())
    fail(ErrorKind::size, "evaluation point has wrong arity");
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (uint16_t e = 0; e < t.mono[i]; ++e) v *= point[i];
    }
    acc += v;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(
    const std::map<std::size_t, Rational>& assignment) const {
  MultiPoly out(space_, order_);
  for (const auto& t : terms_) {
    Term nt;
    nt.mono = t.mono;
    nt.coeff = t.coeff;
    for (const auto& [var, value] : assignment) {
      uint16_t e = nt.mono[var];
      if (!e) continue;
      for (uint16_t k = 0; k < e; ++k) nt.coeff *= value;
      nt.mono[var] = 0;
    }
    if (nt.coeff != 0) out.terms_.push_back(std::move(nt));
  }
  out.normalize();
  return out;
}

MultiPoly MultiPoly::substitute_polys(
    const std::map<std::size_t, MultiPoly>& assignment) const {
  MultiPoly acc = zero(space_, order_);
  for (const auto& t : terms_) {
    MultiPoly prod = constant(space_, order_, t.coeff);
    Monomial rest = t.mono;
    for (const auto& [var, image] : assignment) {
      uint16_t e = rest[var];
      if (!e) continue;
      rest[var] = 0;
      MultiPoly pw = constant(space_, order_, Rational(1));
      for (uint16_t k = 0; k < e; ++k) pw = pw * image;
      prod = prod * pw;
    }
    if (!rest.is_one()) {
      MultiPoly m(space_, order_);
      m.terms_.push_back({rest, Rational(1)});
      prod = prod * m;
    }
    acc = acc + prod;
  }
  return acc;
}

MultiPoly MultiPoly::reordered(const MonomialOrder& order) const {
  MultiPoly out(space_, order);
  out.terms_ = terms_;
  out.normalize();
  return out;
}

MultiPoly MultiPoly::mapped_to(
    SpacePtr target, MonomialOrder order,
    const std::vector<std::optional<std::size_t>>& var_map) const {
  if (var_map.size() != space_->size())
    fail(ErrorKind::size, "variable map has wrong arity");
  MultiPoly out(std::move(target), std::move(order));
  for (const auto& t : terms_) {
    Monomial m(out.space_->size());
    for (std::size_t i = 0; i < var_map.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!var_map[i])
        fail(ErrorKind::size,
             "polynomial uses variable absent from target space: " +
                 space_->label(i));
      m[*var_map[i]] = static_cast<uint16_t>(m[*var_map[i]] + t.mono[i]);
    }
    out.terms_.push_back({std::move(m), t.coeff});
  }
  out.normalize();
  return out;
}

bool MultiPoly::uses_var(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var]) return true;
  return false;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  Integer den_lcm(1), num_gcd(0);
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            t.coeff.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            t.coeff.get_num().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading_coeff() < 0) scale = -scale;
  return *this * scale;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return *this * (Rational(1) / leading_coeff());
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != other.terms_[i].mono ||
        terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    std::string vars;
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (!vars.empty()) vars += "*";
      vars += space_->label(i);
      if (t.mono[i] > 1) vars += "^" + std::to_string(t.mono[i]);
    }
    if (vars.empty()) {
      out += rat_to_string(c);
    } else {
      if (c != 1) out += rat_to_string(c) + "*";
      out += vars;
    }
  }
  return out;
}

} // namespace exactsdp
