#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exactsdp/rational.hpp"

namespace exactsdp {

/// Dense univariate polynomial over Q, coefficients low to high, no trailing
/// zeros. The zero polynomial has an empty coefficient vector.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }
  static UPoly zero() { return UPoly(); }
  static UPoly constant(const Rational& v) { return UPoly({v}); }
  /// t - r
  static UPoly linear_root(const Rational& r) {
    return UPoly({-r, Rational(1)});
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& leading() const;
  Rational coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Rational(0);
  }

  UPoly operator+(const UPoly& other) const;
  UPoly operator-(const UPoly& other) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& other) const;
  UPoly operator*(const Rational& s) const;
  bool operator==(const UPoly& other) const { return c_ == other.c_; }

  UPoly derivative() const;
  Rational evaluate(const Rational& x) const;
  /// Interval Horner: returns [lo, hi] enclosing p([xlo, xhi]).
  std::pair<Rational, Rational> evaluate_interval(const Rational& xlo,
                                                  const Rational& xhi) const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& divisor) const;
  UPoly mod(const UPoly& divisor) const { return divmod(divisor).second; }

  /// Integer-primitive form: integer coefficients, content 1, positive
  /// leading coefficient.
  UPoly primitive() const;
  UPoly monic() const;

  std::string to_string(const std::string& var = "t") const;

private:
  void normalize();
  std::vector<Rational> c_;
};

/// Monic gcd (gcd(0, g) = monic g; gcd(0, 0) = 0).
UPoly upoly_gcd(UPoly a, UPoly b);

/// Extended gcd: g = s*a + t*b with g monic (or zero when a = b = 0).
struct XgcdResult {
  UPoly g;
  UPoly s;
  UPoly t;
};
XgcdResult upoly_xgcd(const UPoly& a, const UPoly& b);

/// Inverse of `a` modulo `modulus`; fails with a field error when
/// gcd(a, modulus) is not constant.
UPoly upoly_inverse_mod(const UPoly& a, const UPoly& modulus);

/// p / gcd(p, p'), monic. The squarefree part: same roots, multiplicity one.
UPoly squarefree_part(const UPoly& p);

/// Resultant Res(f, g) via the Euclidean remainder sequence.
Rational resultant(UPoly f, UPoly g);

/// Unique interpolating polynomial of degree < points.size() through
/// (xs[i], ys[i]); xs must be pairwise distinct.
UPoly lagrange_interpolate(const std::vector<Rational>& xs,
                           const std::vector<Rational>& ys);

} // namespace exactsdp
