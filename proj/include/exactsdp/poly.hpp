#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactsdp/rational.hpp"
#include "exactsdp/varspace.hpp"

namespace exactsdp {

/// Dense exponent vector over a fixed variable space.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<uint16_t> exps) : exps_(std::move(exps)) {}

  std::size_t nvars() const { return exps_.size(); }
  uint16_t operator[](std::size_t i) const { return exps_[i]; }
  uint16_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<uint16_t>& exps() const { return exps_; }

  bool is_one() const;
  uint32_t degree() const;
  /// Total degree over the half-open global index range [from, to).
  uint32_t degree_in(std::size_t from, std::size_t to) const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }

private:
  std::vector<uint16_t> exps_;
};

/// Total order on monomials: lex, grevlex, or a two-block elimination order
/// (grevlex on the eliminated block, ties broken by grevlex on the rest).
/// Elimination property: a monomial free of eliminated variables is smaller
/// than any monomial containing one.
class MonomialOrder {
public:
  enum class Kind { lex, grevlex, block_elim };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
  /// `eliminated[v]` true marks v as belonging to the front (eliminated) block.
  static MonomialOrder block_elimination(std::vector<bool> eliminated) {
    return MonomialOrder(Kind::block_elim, std::move(eliminated));
  }

  Kind kind() const { return kind_; }
  const std::vector<bool>& eliminated() const { return eliminated_; }

  /// Returns <0, 0, >0 as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  bool operator==(const MonomialOrder& other) const {
    return kind_ == other.kind_ && eliminated_ == other.eliminated_;
  }
  bool operator!=(const MonomialOrder& other) const {
    return !(*this == other);
  }

  /// Stable key for caches keyed by order.
  std::string cache_key() const;

private:
  MonomialOrder(Kind kind, std::vector<bool> eliminated)
      : kind_(kind), eliminated_(std::move(eliminated)) {}

  Kind kind_;
  std::vector<bool> eliminated_; // block_elim only; indexed by variable
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted in strictly
/// decreasing `order()`, with nonzero coefficients and distinct monomials.
class MultiPoly {
public:
  MultiPoly() = default;
  MultiPoly(SpacePtr space, MonomialOrder order)
      : space_(std::move(space)), order_(std::move(order)) {}

  static MultiPoly zero(SpacePtr space, MonomialOrder order) {
    return MultiPoly(std::move(space), std::move(order));
  }
  static MultiPoly constant(SpacePtr space, MonomialOrder order,
                            const Rational& c);
  static MultiPoly variable(SpacePtr space, MonomialOrder order,
                            std::size_t var, uint16_t power = 1);
  /// Builds from arbitrary (possibly unsorted, repeated) terms.
  static MultiPoly from_terms(SpacePtr space, MonomialOrder order,
                              std::vector<Term> terms);

  const SpacePtr& space() const { return space_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  /// Constant value; polynomial must be constant.
  Rational constant_value() const;

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const Rational& leading_coeff() const { return leading_term().coeff; }

  uint32_t total_degree() const;
  uint32_t degree_in_var(std::size_t var) const;
  /// Total degree restricted to global index range [from, to).
  uint32_t degree_in_range(std::size_t from, std::size_t to) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly& operator+=(const MultiPoly& other) { return *this = *this + other; }
  MultiPoly& operator-=(const MultiPoly& other) { return *this = *this - other; }

  /// this - (c * mono) * other, the Gröbner reduction step, as one merge.
  MultiPoly sub_mul(const Rational& c, const Monomial& mono,
                    const MultiPoly& other) const;

  MultiPoly derivative(std::size_t var) const;

  /// Full evaluation; assignment must cover every variable that occurs.
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Partial evaluation: substitutes the given variables by constants.
  MultiPoly substitute(const std::map<std::size_t, Rational>& assignment) const;
  /// Substitutes each listed variable by a polynomial (same ring).
  MultiPoly substitute_polys(
      const std::map<std::size_t, MultiPoly>& assignment) const;

  /// Re-sorts terms under a different order (same ring).
  MultiPoly reordered(const MonomialOrder& order) const;

  /// Maps this polynomial into `target` via var_map[old] = new index
  /// (std::nullopt for variables that must not occur).
  MultiPoly mapped_to(SpacePtr target, MonomialOrder order,
                      const std::vector<std::optional<std::size_t>>& var_map)
      const;

  bool uses_var(std::size_t var) const;

  /// Multiplies by the lcm of coefficient denominators over the gcd of
  /// numerators; leading coefficient made positive. Zero stays zero.
  MultiPoly primitive_part() const;
  MultiPoly monic() const;

  bool operator==(const MultiPoly& other) const;
  bool operator!=(const MultiPoly& other) const { return !(*this == other); }

  /// Canonical text: terms in decreasing active order, "a/b" coefficients.
  std::string to_string() const;

private:
  void assert_compatible(const MultiPoly& other) const;
  void normalize(); // sort + combine + drop zeros

  SpacePtr space_;
  MonomialOrder order_ = MonomialOrder::grevlex();
  std::vector<Term> terms_;
};

using PolySystem = std::vector<MultiPoly>;

} // namespace exactsdp
