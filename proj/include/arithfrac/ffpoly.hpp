#pragma once

// Dense univariate polynomials over a prime field F_p, coefficients stored
// little-endian and trimmed so the zero polynomial is empty.

#include <cstdint>
#include <vector>

namespace arithfrac::ff {

using Coeffs = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

/// -1 for the zero polynomial.
int degree(const Coeffs& a);

void trim(Coeffs& a);

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Remainder of a modulo nonzero b.
Coeffs remainder(Coeffs a, const Coeffs& b, std::uint32_t p);

/// Monic gcd; zero only if both inputs are zero.
Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p);

Coeffs multiply(const Coeffs& a, const Coeffs& b, std::uint32_t p);

/// The polynomial whose base-p digits of `index` are its coefficients.
Coeffs from_index(std::uint64_t index, std::uint32_t p);

}  // namespace arithfrac::ff
