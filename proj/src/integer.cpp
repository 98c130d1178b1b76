#include "arithfrac/integer.hpp"

#include <cmath>

#include "arithfrac/error.hpp"

namespace arithfrac {

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw InputError("empty integer literal '" + std::string(text) + "'");
  Integer value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw InputError("invalid integer literal '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw InputError("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

Integer ceil_sqrt(const Integer& n) {
  Integer r = isqrt(n);
  if (r * r < n) ++r;
  return r;
}

double log_of(const Integer& n) {
  if (n <= 0) throw InputError("log of non-positive integer");
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) return std::log(n.convert_to<double>());
  const unsigned shift = bits - 64;
  const Integer top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_ratio(const Integer& num, const Integer& den) {
  if (num == den) return 0.0;
  const Rational ratio(num, den);
  const double value = to_double(ratio);
  if (std::isfinite(value) && value > 0.0) return std::log(value);
  return log_of(num) - log_of(den);
}

std::optional<std::int64_t> to_int64(const Integer& value) {
  if (value < std::numeric_limits<std::int64_t>::min() || value > std::numeric_limits<std::int64_t>::max()) {
    return std::nullopt;
  }
  return value.convert_to<std::int64_t>();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace arithfrac
