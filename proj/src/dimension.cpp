#include "arithfrac/dimension.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "arithfrac/error.hpp"

namespace arithfrac {

namespace {

struct BoxFunction {
  std::vector<double> rates;  // log(N_i) / n_i

  double operator()(double s) const {
    double sum = 0.0;
    for (double r : rates) sum += std::exp(-s * r);
    return sum;
  }
};

}  // namespace

DimensionResult solve_box_equation(std::span<const BoxWeight> weights, double tol) {
  if (weights.empty()) throw InputError("box equation needs at least one weight");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  BoxFunction f;
  for (const auto& w : weights) {
    if (w.degree < 1) throw InputError("weight degree must be >= 1");
    if (w.base <= 1) {
      throw InputError(weights.size() == 1 ? "degenerate weight N = 1: every s solves the equation"
                                           : "degenerate weight N <= 1: the equation has no root");
    }
    f.rates.push_back(log_of(w.base) / w.degree);
  }

  DimensionResult result;
  if (std::abs(f(0.0) - 1.0) <= tol) return result;

  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
    ++result.iterations;
  }
  // Bisect to the resolution of double; the residual bound is then checked.
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < 2000; ++k) {
    mid = 0.5 * (lo + hi);
    ++result.iterations;
    const double g = f(mid) - 1.0;
    if (g == 0.0 || mid == lo || mid == hi) break;
    (g > 0.0 ? lo : hi) = mid;
  }
  result.s = mid;
  result.residual = std::abs(f(mid) - 1.0);
  if (result.residual > tol) {
    throw std::runtime_error("box equation residual " + std::to_string(result.residual) + " above tolerance");
  }
  return result;
}

std::vector<BoxWeight> box_weights(const FractalSpec& spec) {
  std::vector<BoxWeight> out;
  for (const auto& m : spec.maps()) out.push_back({m.leading().norm(), m.degree()});
  return out;
}

DimensionResult box_dimension(const FractalSpec& spec, double tol) {
  const auto w = box_weights(spec);
  return solve_box_equation(w, tol);
}

GrowthFit fit_log_log(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("fit needs equal-length abscissae and ordinates");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] >= 1.0 && ys[k] >= 1.0) {
      lx.push_back(std::log(xs[k]));
      ly.push_back(std::log(ys[k]));
    }
  }
  const std::size_t n = lx.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  if (n > 0) {
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (n < 2 || sxx <= 0.0) throw InputError("fit needs at least two usable points with distinct abscissae");

  GrowthFit fit;
  fit.points_used = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  if (n < 3) fit.warnings.push_back("fewer than 3 usable points");
  if (n < xs.size()) fit.warnings.push_back("dropped points with threshold or count below 1");
  const double span_decades = (lx.back() - lx.front()) / std::log(10.0);
  if (std::abs(span_decades) < 2.0) fit.warnings.push_back("thresholds span fewer than 2 orders of magnitude");
  return fit;
}

GrowthFit estimate_dimension(const CountSeries& series) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < series.thresholds.size(); ++k) {
    xs.push_back(series.thresholds[k].convert_to<double>());
    ys.push_back(static_cast<double>(series.counts[k]));
  }
  return fit_log_log(xs, ys);
}

MonotoneReport check_monotone(const FractalSpec& a, const FractalSpec& b, const Integer& window, double tol) {
  if (!(a.ring() == b.ring())) throw InputError("monotonicity check needs both specs over the same ring");
  MonotoneReport report;
  const FractalSample sa = generate(a, window);
  const FractalSample sb = generate(b, std::max(window, b.max_base_norm()));
  std::optional<MembershipOracle> oracle;
  if (b.all_affine()) oracle.emplace(b);
  report.subset_confirmed = true;
  for (const auto& e : sa.elements) {
    ++report.checked;
    if (sb.contains(e)) continue;
    // An element may be missed by a truncated sample of F_b; ask the oracle.
    if (oracle && (*oracle)(e) == Membership::yes) continue;
    report.subset_confirmed = false;
    report.counterexample = e;
    break;
  }
  report.dim_a = box_dimension(a, tol).s;
  report.dim_b = box_dimension(b, tol).s;
  report.consistent = report.dim_a <= report.dim_b + tol;
  return report;
}

}  // namespace arithfrac
