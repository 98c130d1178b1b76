#pragma once

// Rational points of projective space with the standard Weil height, and
// homogeneous polynomial endomorphisms acting on them.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arithfrac/ifs.hpp"
#include "arithfrac/integer.hpp"

namespace arithfrac {

/// A point of P^n(Q) in canonical coordinates: coprime integers whose first
/// nonzero entry is positive.
class ProjPoint {
 public:
  /// Throws InputError on an empty or all-zero tuple.
  static ProjPoint normalize(std::vector<Integer> coords);

  std::span<const Integer> coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size() - 1; }

  /// Multiplicative height max |x_i|.
  Integer height() const;

  std::string to_string() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  /// Canonical order: by height, then lexicographically by coordinates.
  friend std::strong_ordering operator<=>(const ProjPoint& p, const ProjPoint& q);

 private:
  explicit ProjPoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  std::vector<Integer> coords_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const noexcept;
};

struct HeightValue {
  Integer H;
  double h = 0.0;
};

HeightValue height(const ProjPoint& p);

struct Monomial {
  Integer coeff;
  std::vector<unsigned> exps;
};

class HomogeneousPolynomial {
 public:
  /// Zero-coefficient monomials are dropped; throws if degrees differ.
  HomogeneousPolynomial(std::size_t variables, std::vector<Monomial> monomials);

  std::size_t variables() const noexcept { return variables_; }
  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return monomials_.empty(); }
  std::span<const Monomial> monomials() const noexcept { return monomials_; }
  /// Sum of absolute coefficient values.
  Integer abs_coefficient_sum() const;

  Integer operator()(std::span<const Integer> x) const;

 private:
  std::size_t variables_;
  unsigned degree_ = 0;
  std::vector<Monomial> monomials_;
};

/// (phi_0 : ... : phi_n), all homogeneous of the same degree m >= 1.
class PolyEndo {
 public:
  explicit PolyEndo(std::vector<HomogeneousPolynomial> components);

  std::size_t dimension() const noexcept { return components_.size() - 1; }
  unsigned degree() const noexcept { return degree_; }
  std::span<const HomogeneousPolynomial> components() const noexcept { return components_; }
  /// Max over components of the absolute coefficient sum.
  Integer coefficient_bound() const;

  /// Evaluates and normalizes. Throws IndeterminacyError if every component
  /// vanishes at p.
  ProjPoint operator()(const ProjPoint& p) const;

 private:
  std::vector<HomogeneousPolynomial> components_;
  unsigned degree_ = 0;
};

/// Convenience: a P^1 endomorphism (f(x, y) : g(x, y)) from dense coefficient
/// lists; fx[k] is the coefficient of x^k y^(m-k).
PolyEndo binary_form_endo(std::span<const std::int64_t> fx, std::span<const std::int64_t> gx);

/// Homogenization of the univariate polynomial c_0 + c_1 x + ... + c_m x^m.
PolyEndo homogenize(std::span<const std::int64_t> coeffs);

/// Breadth-first closure of `base` under all endos, keeping heights <= h_max.
std::vector<ProjPoint> orbit_generate(std::span<const PolyEndo> endos, std::span<const ProjPoint> base,
                                      const Integer& h_max);

using ProjectiveVerificationReport = BasicVerificationReport<ProjPoint>;

inline constexpr double kDefaultMargin = 4.0;

/// floor((h_max / C)^(1/m) / margin), capped at h_max, where C and m are the
/// largest coefficient bound and degree among the endos.
Integer projective_safe_window(std::span<const PolyEndo> endos, const Integer& h_max, double margin);

ProjectiveVerificationReport verify_projective_self_similar(std::span<const PolyEndo> endos,
                                                            std::span<const ProjPoint> base,
                                                            const Integer& h_max, double margin = kDefaultMargin,
                                                            std::size_t max_witnesses = 1000);

struct ScalingDeviation {
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  std::size_t samples = 0;
};

/// |h(f(P)) - m h(P)| over the sample. Exact zero when H(f(P)) = H(P)^m.
ScalingDeviation check_height_scaling(const PolyEndo& f, std::span<const ProjPoint> sample);

/// Deterministic pseudo-random points of P^1(Q) with height <= h_max.
std::vector<ProjPoint> random_p1_points(std::size_t count, std::int64_t h_max, std::uint64_t seed);

/// All points of P^1(Q) with height <= h_max, canonically ordered.
std::vector<ProjPoint> p1_points_up_to(std::int64_t h_max);

struct PreperiodicPoint {
  ProjPoint point;
  std::size_t tail = 0;
  std::size_t cycle = 0;
};

struct PreperiodicReport {
  std::int64_t h_search = 0;
  std::size_t iteration_cap = 0;
  Integer h_escape;
  std::size_t seeds = 0;
  std::vector<PreperiodicPoint> preperiodic;
  std::size_t escaped = 0;
  /// Seeds that neither repeated nor escaped within the iteration cap.
  std::vector<ProjPoint> undetermined;
};

inline constexpr std::size_t kDefaultIterationCap = 64;
inline constexpr std::int64_t kDefaultEscapeHeight = 1'000'000;

/// Orbit scan of every seed of height <= h_search for an endo of P^1 of
/// degree >= 2. "Escaped" means the height passed h_escape.
PreperiodicReport find_preperiodic(const PolyEndo& f, std::int64_t h_search,
                                   std::size_t iteration_cap = kDefaultIterationCap,
                                   const Integer& h_escape = kDefaultEscapeHeight, unsigned workers = 1);

/// "inf" for (1:0), otherwise x/y in lowest terms.
std::string affine_label(const ProjPoint& p);

}  // namespace arithfrac
