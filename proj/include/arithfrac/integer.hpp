#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace arithfrac {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal integer with optional sign. Throws InputError.
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);
/// ceil(sqrt(n)) for n >= 0.
Integer ceil_sqrt(const Integer& n);

/// Natural logarithm of a positive integer, accurate beyond the double range.
double log_of(const Integer& n);

/// Natural log of the positive rational num/den.
double log_ratio(const Integer& num, const Integer& den);

std::optional<std::int64_t> to_int64(const Integer& value);

double to_double(const Rational& value);

}  // namespace arithfrac
