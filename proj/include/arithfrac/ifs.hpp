#pragma once

// Arithmetic self-similar sets generated by finitely many similarity maps of
// a ring. A set F is realized as the orbit closure of its base points; it is
// self-similar when F is the disjoint union of its images phi_i(F).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arithfrac/integer.hpp"
#include "arithfrac/rings.hpp"

namespace arithfrac {

/// A polynomial map c_0 + c_1 x + ... + c_n x^n with c_n != 0 and n >= 1.
/// Affine maps need norm(c_1) > 1. Maps of degree >= 2 are allowed over Z only.
class SimilarityMap {
 public:
  SimilarityMap(RingSpec ring, std::vector<RingElement> coefficients);

  static SimilarityMap affine(const RingElement& a, const RingElement& b);

  const RingSpec& ring() const noexcept { return ring_; }
  std::span<const RingElement> coefficients() const noexcept { return coefficients_; }
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const RingElement& leading() const noexcept { return coefficients_.back(); }
  const RingElement& constant() const noexcept { return coefficients_.front(); }
  bool is_affine() const noexcept { return degree() == 1; }

  RingElement operator()(const RingElement& x) const;

 private:
  RingSpec ring_;
  std::vector<RingElement> coefficients_;
};

class FractalSpec {
 public:
  FractalSpec(RingSpec ring, std::vector<SimilarityMap> maps, std::vector<RingElement> base_points);

  /// Digit system x -> base*x + d for each digit d, seeded at 0.
  static FractalSpec digits(const RingElement& base, std::span<const RingElement> digits);
  static FractalSpec integer_digits(std::int64_t base, std::span<const std::int64_t> digits);

  const RingSpec& ring() const noexcept { return ring_; }
  std::span<const SimilarityMap> maps() const noexcept { return maps_; }
  std::span<const RingElement> base_points() const noexcept { return base_points_; }
  bool all_affine() const noexcept;
  Integer max_base_norm() const;

 private:
  RingSpec ring_;
  std::vector<SimilarityMap> maps_;
  std::vector<RingElement> base_points_;
};

/// F intersected with the norm ball of radius `window`, canonically sorted.
struct FractalSample {
  Integer window;
  std::vector<RingElement> elements;
  /// True when window >= escape_norm(spec): then no element of F inside the
  /// window can be reached only through points outside it.
  bool exact = false;

  bool contains(const RingElement& e) const;
};

/// Smallest norm bound R such that every map strictly increases the norm of
/// any x with norm(x) > R.
Integer escape_norm(const FractalSpec& spec);

/// Largest Y such that norm(phi_i(x)) <= Y forces norm(x) <= window, for all i.
/// May be negative when no such bound exists.
Integer image_window(const FractalSpec& spec, const Integer& window);

FractalSample generate(const FractalSpec& spec, const Integer& window);

namespace detail {
/// generate() on arbitrary-precision elements only, bypassing the
/// fixed-width kernel used for small affine windows.
FractalSample generate_wide(const FractalSpec& spec, const Integer& window);
}  // namespace detail

enum class VerificationStatus { verified, overlap, gap, seed_not_covered };

const char* to_string(VerificationStatus status);

/// Map numbers are 1-based, matching phi_1 ... phi_n.
template <class Element>
struct OverlapWitness {
  Element element;
  std::size_t first_map;
  std::size_t second_map;
};

/// Exact when every map is affine, else a floating-point value.
struct DensitySum {
  std::optional<Rational> exact;
  double value = 0.0;
};

template <class Element>
struct BasicVerificationReport {
  VerificationStatus status = VerificationStatus::verified;
  Integer window;
  Integer safe_window;
  bool exact_window = false;
  /// Elements of F with size <= safe_window that were checked.
  std::size_t checked = 0;
  std::size_t overlap_count = 0;
  std::vector<OverlapWitness<Element>> overlaps;
  std::vector<Element> gaps;
  std::vector<Element> uncovered_seeds;
  /// Base points fixed by no map.
  std::vector<Element> seed_only;
  std::optional<DensitySum> density_sum;
};

using VerificationReport = BasicVerificationReport<RingElement>;

/// Windowed check of the disjoint-union property. Throws InputError when the
/// safe window does not exceed the largest base point norm.
VerificationReport verify_self_similar(const FractalSpec& spec, const Integer& window,
                                       std::size_t max_witnesses = 1000);

enum class Membership { yes, no, unknown };

const char* to_string(Membership m);

/// Backward-recursion membership test for affine specs. Elements inside the
/// escape ball are looked up in a precomputed sample; outside it every
/// preimage has strictly smaller norm, so recursion terminates.
class MembershipOracle {
 public:
  explicit MembershipOracle(FractalSpec spec);

  Membership operator()(const RingElement& x, std::size_t depth_cap = 4096) const;

  const Integer& ball_radius() const noexcept { return ball_.window; }

 private:
  FractalSpec spec_;
  FractalSample ball_;
};

Membership member(const FractalSpec& spec, const RingElement& x, std::size_t depth_cap = 4096);

struct CountSeries {
  std::vector<Integer> thresholds;
  std::vector<std::uint64_t> counts;
};

/// Thresholds must be strictly ascending and nonnegative.
CountSeries count_series(const FractalSpec& spec, std::span<const Integer> thresholds);

/// Sum over maps of norm(a_i)^(-1/n_i).
DensitySum density_sum(const FractalSpec& spec);

}  // namespace arithfrac
