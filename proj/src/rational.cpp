#include "exactsdp/rational.hpp"

#include "exactsdp/errors.hpp"

namespace exactsdp {

Rational rat_from_string(const std::string& text) {
  if (text.empty()) fail(ErrorKind::usage, "empty rational literal");
  // mpq_class accepts "a/b" but tolerates junk loosely in some forms; vet
  // the shape first so errors surface as usage errors, not GMP aborts.
  std::size_t slash = text.find('/');
  auto check_int = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    std::size_t i = from;
    if (text[i] == '-' || text[i] == '+') ++i;
    if (i >= to) return false;
    for (; i < to; ++i)
      if (text[i] < '0' || text[i] > '9') return false;
    return true;
  };
  bool ok = (slash == std::string::npos)
                ? check_int(0, text.size())
                : check_int(0, slash) && check_int(slash + 1, text.size());
  if (!ok) fail(ErrorKind::usage, "malformed rational literal: " + text);
  Rational value;
  if (value.set_str(text, 10) != 0)
    fail(ErrorKind::usage, "malformed rational literal: " + text);
  if (value.get_den() == 0)
    fail(ErrorKind::usage, "zero denominator in rational literal: " + text);
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rational& value) {
  return value.get_str();
}

long ceil_log10_abs(const Rational& value) {
  if (value == 0) return 0;
  Integer num = abs(value.get_num());
  Integer den = value.get_den();
  // digits10 of num minus digits10 of den brackets log10 within 1; fix up
  // by exact comparison against powers of ten.
  long k = static_cast<long>(num.get_str().size()) -
           static_cast<long>(den.get_str().size()) + 1;
  auto pow10 = [](long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e >= 0 ? e : -e));
    return p;
  };
  auto abs_le_pow10 = [&](long e) {
    // |value| <= 10^e ?
    if (e >= 0) return num <= den * pow10(e);
    return num * pow10(-e) <= den;
  };
  while (!abs_le_pow10(k)) ++k;
  while (abs_le_pow10(k - 1)) --k;
  return k;
}

std::string decimal_string(const Rational& value, int digits) {
  if (digits < 1) digits = 1;
  if (value == 0) return "0";
  bool negative = value < 0;
  Rational a = abs(value);
  // a in (10^(k-1), 10^k]; we want `digits` significant digits, i.e. an
  // integer mantissa m with m = round(a * 10^(digits - k)).
  long k = ceil_log10_abs(a);
  long shift = digits - k;
  Integer num = a.get_num(), den = a.get_den();
  auto pow10 = [](long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
  };
  if (shift >= 0) num *= pow10(shift); else den *= pow10(-shift);
  // Round half away from zero: m = floor((2*num + den) / (2*den)).
  Integer m = (2 * num + den) / (2 * den);
  std::string mant = m.get_str();
  // Rounding can push the mantissa to digits+1 places (e.g. 9.99 -> 10.0).
  if (static_cast<long>(mant.size()) > digits) {
    mant.pop_back();
    ++k;
  }
  std::string out;
  if (negative) out += '-';
  if (k <= 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-k), '0');
    out += mant;
  } else if (k >= static_cast<long>(mant.size())) {
    out += mant;
    out.append(static_cast<std::size_t>(k - static_cast<long>(mant.size())), '0');
  } else {
    out += mant.substr(0, static_cast<std::size_t>(k));
    out += '.';
    out += mant.substr(static_cast<std::size_t>(k));
  }
  return out;
}

} // namespace exactsdp
