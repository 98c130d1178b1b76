#include "arithfrac/ffpoly.hpp"

#include <utility>

#include "arithfrac/error.hpp"

namespace arithfrac::ff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Coeffs remainder(Coeffs a, const Coeffs& b, std::uint32_t p) {
  if (b.empty()) throw InputError("polynomial division by zero");
  const int db = degree(b);
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  trim(a);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const std::uint64_t factor = a.back() * lead_inv % p;
    for (int k = 0; k <= db; ++k) {
      const std::uint64_t sub = factor * b[k] % p;
      auto& slot = a[k + shift];
      slot = static_cast<std::uint32_t>((slot + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = remainder(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = inverse_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p);
  }
  return a;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(out);
  return out;
}

Coeffs from_index(std::uint64_t index, std::uint32_t p) {
  Coeffs out;
  while (index > 0) {
    out.push_back(static_cast<std::uint32_t>(index % p));
    index /= p;
  }
  trim(out);
  return out;
}

}  // namespace arithfrac::ff
