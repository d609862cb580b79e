#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace exactsdp {

/// Exact rational scalar. GMP's canonical form matches the required
/// invariants: lowest terms, denominator > 0, unique zero 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", or "a/b". Throws Error(usage) on malformed input or b = 0.
Rational rat_from_string(const std::string& text);

/// Canonical text form: "a" for integers, "a/b" otherwise, minus sign on the
/// numerator only.
std::string rat_to_string(const Rational& value);

inline bool rat_is_integer(const Rational& value) {
  return value.get_den() == 1;
}

inline int rat_sign(const Rational& value) { return sgn(value); }

/// Decimal rendering of num/den with `digits` significant digits, round half
/// away from zero. Deterministic; used for display only.
std::string decimal_string(const Rational& value, int digits);

/// Floor of log10(|value|) related helper: |value| <= 10^k with k minimal.
/// Used by decimal_string; exposed for tests.
long ceil_log10_abs(const Rational& value);

} // namespace exactsdp
