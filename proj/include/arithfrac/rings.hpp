#pragma once

// Exact arithmetic in Z and in imaginary-quadratic orders Z[sqrt(d)], d < 0
// squarefree. Half-integer maximal orders (d = 1 mod 4) are not modelled.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithfrac/integer.hpp"

namespace arithfrac {

class RingSpec {
 public:
  enum class Kind { integers, quadratic };

  static RingSpec integers() { return RingSpec(Kind::integers, 0); }
  /// Throws InputError unless d < 0 and d is squarefree.
  static RingSpec quadratic(std::int64_t d);

  Kind kind() const noexcept { return kind_; }
  bool is_integers() const noexcept { return kind_ == Kind::integers; }
  /// The discriminant parameter d; 0 for Z.
  std::int64_t d() const noexcept { return d_; }

  std::string name() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(Kind kind, std::int64_t d) : kind_(kind), d_(d) {}
  Kind kind_;
  std::int64_t d_;
};

/// u + v*sqrt(d), or the integer u when the ring is Z (v stays 0).
class RingElement {
 public:
  RingElement(RingSpec ring, Integer u, Integer v = 0);

  static RingElement zero(RingSpec ring) { return RingElement(ring, 0); }
  static RingElement one(RingSpec ring) { return RingElement(ring, 1); }

  const RingSpec& ring() const noexcept { return ring_; }
  const Integer& u() const noexcept { return u_; }
  const Integer& v() const noexcept { return v_; }
  bool is_zero() const noexcept { return u_ == 0 && v_ == 0; }

  /// Z: |x|. Z[sqrt(d)]: u^2 + |d| v^2. Multiplicative in both cases.
  Integer norm() const;

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& x, const RingElement& y);
  friend RingElement operator-(const RingElement& x, const RingElement& y);
  friend RingElement operator*(const RingElement& x, const RingElement& y);

  friend bool operator==(const RingElement& x, const RingElement& y) {
    return x.ring_ == y.ring_ && x.u_ == y.u_ && x.v_ == y.v_;
  }
  /// Canonical order: ascending integers, lexicographic (u, v) for quadratic.
  friend std::strong_ordering operator<=>(const RingElement& x, const RingElement& y);

  std::string to_string() const;

 private:
  RingSpec ring_;
  Integer u_;
  Integer v_;
};

struct RingElementHash {
  std::size_t operator()(const RingElement& e) const noexcept;
};

/// Exact quotient q with q*y == x, or nullopt. Throws InputError if y == 0.
std::optional<RingElement> try_divide(const RingElement& x, const RingElement& y);

/// All elements of norm <= bound, in canonical order.
std::vector<RingElement> elements_of_norm_at_most(const RingSpec& ring, const Integer& bound);

}  // namespace arithfrac
