#pragma once

// Exact counts of points of bounded height on P^n(Q) and P^n(F_q(t)), with
// the predicted main terms of Schanuel (over Q) and Serre-Wan (over F_q(t)).

#include <cstdint>
#include <span>
#include <vector>

#include "arithfrac/integer.hpp"

namespace arithfrac {

inline constexpr std::uint64_t kDefaultWorkBudget = 100'000'000;

/// counts[h] = number of points of P^n(Q) with height exactly h, for h = 0..x.
/// Work is (2x+1)^(n+1) tuples; throws BudgetExceeded above `budget`.
std::vector<std::uint64_t> count_pn_q_by_height(unsigned n, std::int64_t x,
                                                std::uint64_t budget = kDefaultWorkBudget, unsigned workers = 1);

/// Points of P^n(Q) with height <= x.
std::uint64_t count_pn_q(unsigned n, std::int64_t x, std::uint64_t budget = kDefaultWorkBudget,
                         unsigned workers = 1);

struct SchanuelInputs {
  double class_number = 1.0;
  double regulator = 1.0;
  double roots_of_unity = 2.0;
  int real_embeddings = 1;
  int complex_embeddings = 0;
  double discriminant = 1.0;
  /// zeta_K(n + 1).
  double zeta_value = 0.0;
  unsigned n = 1;
};

/// Inputs for K = Q, with zeta(n + 1) evaluated numerically.
SchanuelInputs rational_schanuel_inputs(unsigned n);

double schanuel_constant(const SchanuelInputs& in);

struct FFieldConfig {
  std::uint32_t q = 2;
  unsigned n = 1;
  unsigned d = 0;
};

/// counts[k] = points of P^n(F_q(t)) with logarithmic height exactly k, for
/// k = 0..d. Work is q^((n+1)(d+1)) tuples. q must be prime.
std::vector<std::uint64_t> count_pn_ffield_by_height(const FFieldConfig& cfg,
                                                     std::uint64_t budget = kDefaultWorkBudget,
                                                     unsigned workers = 1);

std::uint64_t count_pn_ffield(const FFieldConfig& cfg, std::uint64_t budget = kDefaultWorkBudget,
                              unsigned workers = 1);

/// zeta of P^1 over F_q: 1 / ((1 - q^-s)(1 - q^(1-s))).
Rational p1_zeta(std::uint32_t q, unsigned s);

/// q^(n+1) / (zeta_X(n+1) (q - 1)) for X = P^1 (genus 0, class number 1).
Rational serre_wan_constant_exact(std::uint32_t q, unsigned n);
double serre_wan_constant(std::uint32_t q, unsigned n);

/// c * x^a.
struct PowerLaw {
  double coefficient = 1.0;
  double exponent = 1.0;
  double operator()(double x) const;
};

struct Observation {
  std::int64_t label = 0;  // x for height bounds, d for logarithmic heights
  double abscissa = 0.0;   // the multiplicative scale fed to the model
  std::uint64_t observed = 0;
};

struct ComparisonRow {
  std::int64_t label = 0;
  std::uint64_t observed = 0;
  double predicted = 0.0;
  double rel_error = 0.0;
};

struct PredictionComparison {
  std::vector<ComparisonRow> rows;
  double fitted_exponent = 0.0;
};

/// Needs at least two observations; the exponent comes from the same
/// log-log least squares used for dimension estimates.
PredictionComparison compare(std::span<const Observation> observed, const PowerLaw& model);

}  // namespace arithfrac
