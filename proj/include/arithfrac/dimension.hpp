#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arithfrac/ifs.hpp"
#include "arithfrac/integer.hpp"

namespace arithfrac {

inline constexpr double kDefaultTolerance = 1e-12;

/// One term N^(-s/n) of the box equation.
struct BoxWeight {
  Integer base;
  int degree = 1;
};

struct DimensionResult {
  double s = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Unique s >= 0 with sum_i N_i^(-s/n_i) = 1, by bracketing and bisection.
/// Throws InputError on an empty list or any weight with N_i <= 1.
DimensionResult solve_box_equation(std::span<const BoxWeight> weights, double tol = kDefaultTolerance);

/// (norm(a_i), n_i) for each map of the spec.
std::vector<BoxWeight> box_weights(const FractalSpec& spec);

DimensionResult box_dimension(const FractalSpec& spec, double tol = kDefaultTolerance);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points_used = 0;
  std::vector<std::string> warnings;
};

/// Ordinary least squares of log(y) on log(x). Points with x < 1 or y < 1 are
/// dropped; throws InputError if fewer than two distinct abscissae remain.
GrowthFit fit_log_log(std::span<const double> xs, std::span<const double> ys);

GrowthFit estimate_dimension(const CountSeries& series);

struct MonotoneReport {
  bool subset_confirmed = false;
  std::optional<RingElement> counterexample;
  std::size_t checked = 0;
  double dim_a = 0.0;
  double dim_b = 0.0;
  bool consistent = false;
};

/// Checks generate(a) within the window is contained in F_b and compares
/// box dimensions. Both specs must share a ring.
MonotoneReport check_monotone(const FractalSpec& a, const FractalSpec& b, const Integer& window,
                              double tol = kDefaultTolerance);

}  // namespace arithfrac
