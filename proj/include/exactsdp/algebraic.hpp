#pragma once

#include <optional>
#include <vector>

#include "exactsdp/upoly.hpp"

namespace exactsdp {

/// Open interval (lo, hi) with rational endpoints, or the exact point
/// lo == hi.
struct IsolatingInterval {
  Rational lo, hi;

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

/// Sturm chain of p (p assumed squarefree for root counting).
std::vector<UPoly> sturm_chain(const UPoly& p);

/// Number of real roots of the squarefree p in the open interval (a, b);
/// requires p(a) != 0 and p(b) != 0.
long sturm_count(const std::vector<UPoly>& chain, const Rational& a,
                 const Rational& b);

/// Number of real roots of the squarefree p on the whole line.
long sturm_count_all(const std::vector<UPoly>& chain);

/// 1 + max |c_i / lc|; every complex root has absolute value below this.
Rational cauchy_root_bound(const UPoly& p);

/// Isolates every real root of p (p nonzero; isolation runs on the
/// squarefree part). Intervals are sorted, pairwise disjoint, each holding
/// exactly one real root; rational roots discovered en route come back as
/// degenerate point intervals.
std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p);

/// Real algebraic number: squarefree integer-primitive defining polynomial
/// plus an isolating interval.
class AlgebraicNumber {
public:
  /// From a defining polynomial (made squarefree/primitive) and an interval
  /// isolating exactly one of its real roots.
  AlgebraicNumber(const UPoly& poly, IsolatingInterval interval);
  static AlgebraicNumber from_rational(const Rational& r);

  const UPoly& poly() const { return poly_; }
  const IsolatingInterval& interval() const { return interval_; }

  bool is_rational() const { return interval_.is_point(); }
  /// Exact value when is_rational().
  Rational rational_value() const;

  /// Halves the interval width (no-op on point intervals).
  void refine_once();
  /// Refines until width <= bound.
  void refine_below(const Rational& bound);

  /// Decimal rendering with the given significant digits.
  std::string decimal(int digits) const;

private:
  UPoly poly_;
  IsolatingInterval interval_;
  int sign_lo_ = 0; // sign of poly_ at interval_.lo (0 only for points)
};

/// Exact sign of g at alpha: -1, 0, +1. Zero is certified via
/// gcd(g, defining polynomial), never via interval width.
int sign_at(const UPoly& g, const AlgebraicNumber& alpha);

/// Exact comparison: -1, 0, +1 as a < b, a == b, a > b. Equality is decided
/// by shared gcd factors, order by interval refinement.
int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Value of num/den at alpha as a fresh algebraic number (den(alpha) != 0).
/// The defining polynomial of the result is obtained from the resultant
/// eliminating the parameter.
AlgebraicNumber evaluate_rational_function(const UPoly& num, const UPoly& den,
                                           const AlgebraicNumber& alpha);

/// Decimal rendering of num(alpha)/den(alpha) without constructing the value
/// polynomial (refines alpha until the enclosure pins `digits` digits).
std::string rational_function_decimal(const UPoly& num, const UPoly& den,
                                      AlgebraicNumber alpha, int digits);

/// Exact enclosure of num(alpha)/den(alpha) with width <= bound.
IsolatingInterval rational_function_enclosure(const UPoly& num,
                                              const UPoly& den,
                                              AlgebraicNumber& alpha,
                                              const Rational& bound);

} // namespace exactsdp
