#include "arithfrac/census.hpp"

#include <cstdio>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "arithfrac/dimension.hpp"
#include "arithfrac/error.hpp"
#include "arithfrac/ffpoly.hpp"
#include "arithfrac/parallel.hpp"

namespace arithfrac {

namespace {

void check_budget(long double work, std::uint64_t budget, const std::string& what) {
  if (work > static_cast<long double>(budget)) {
    char count[64];
    std::snprintf(count, sizeof count, "%.0Lf", work);
    throw BudgetExceeded(what + " needs about " + count +
                         " tuple evaluations, above the budget of " + std::to_string(budget) +
                         "; try a smaller bound");
  }
}

using Histogram = std::vector<std::uint64_t>;

void add_into(Histogram& total, const Histogram& part) {
  for (std::size_t k = 0; k < part.size(); ++k) total[k] += part[k];
}

}  // namespace

std::vector<std::uint64_t> count_pn_q_by_height(unsigned n, std::int64_t x, std::uint64_t budget,
                                                unsigned workers) {
  if (n < 1) throw InputError("projective dimension must be >= 1");
  if (x < 1) throw InputError("height bound must be >= 1");
  const std::int64_t side = 2 * x + 1;
  check_budget(std::pow(static_cast<long double>(side), n + 1), budget, "P^n(Q) census");

  // Count primitive vectors in [-x, x]^(n+1) by height; each point has two.
  auto chunk = [&](std::size_t begin, std::size_t end) {
    Histogram hist(static_cast<std::size_t>(x) + 1, 0);
    std::vector<std::int64_t> prefix_gcd(n + 1);
    std::vector<std::int64_t> prefix_max(n + 1);
    std::vector<std::int64_t> coord(n + 1);
    for (std::size_t first = begin; first < end; ++first) {
      coord[0] = static_cast<std::int64_t>(first) - x;
      prefix_gcd[0] = std::abs(coord[0]);
      prefix_max[0] = std::abs(coord[0]);
      // Odometer over the remaining coordinates.
      std::size_t level = 1;
      coord[1] = -x - 1;
      while (level > 0) {
        if (coord[level] == x) {
          --level;
          continue;
        }
        ++coord[level];
        const std::int64_t a = std::abs(coord[level]);
        prefix_gcd[level] = std::gcd(prefix_gcd[level - 1], a);
        prefix_max[level] = std::max(prefix_max[level - 1], a);
        if (level == n) {
          if (prefix_gcd[level] == 1) ++hist[static_cast<std::size_t>(prefix_max[level])];
        } else {
          ++level;
          coord[level] = -x - 1;
        }
      }
    }
    return hist;
  };
  Histogram total(static_cast<std::size_t>(x) + 1, 0);
  for (const auto& part : parallel_chunks<Histogram>(static_cast<std::size_t>(side), workers, chunk)) {
    add_into(total, part);
  }
  for (auto& c : total) c /= 2;
  return total;
}

std::uint64_t count_pn_q(unsigned n, std::int64_t x, std::uint64_t budget, unsigned workers) {
  const auto hist = count_pn_q_by_height(n, x, budget, workers);
  return std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
}

SchanuelInputs rational_schanuel_inputs(unsigned n) {
  if (n < 1) throw InputError("projective dimension must be >= 1");
  SchanuelInputs in;
  in.n = n;
  in.zeta_value = std::riemann_zeta(static_cast<double>(n + 1));
  return in;
}

double schanuel_constant(const SchanuelInputs& in) {
  if (in.class_number <= 0 || in.regulator <= 0 || in.roots_of_unity <= 0 || in.discriminant <= 0 ||
      in.zeta_value <= 0 || in.real_embeddings < 0 || in.complex_embeddings < 0 ||
      in.real_embeddings + in.complex_embeddings < 1 || in.n < 1) {
    throw InputError("invalid Schanuel inputs");
  }
  const double np1 = static_cast<double>(in.n + 1);
  const double lattice = std::pow(2.0, in.real_embeddings) * std::pow(2.0 * std::numbers::pi, in.complex_embeddings) /
                         std::sqrt(in.discriminant);
  return in.class_number * in.regulator / (in.roots_of_unity * in.zeta_value) * std::pow(lattice, np1) *
         std::pow(np1, in.real_embeddings + in.complex_embeddings - 1);
}

std::vector<std::uint64_t> count_pn_ffield_by_height(const FFieldConfig& cfg, std::uint64_t budget,
                                                     unsigned workers) {
  if (!ff::is_prime(cfg.q)) throw InputError("function field census needs prime q, got " + std::to_string(cfg.q));
  if (cfg.n < 1) throw InputError("projective dimension must be >= 1");
  const long double polys_ld = std::pow(static_cast<long double>(cfg.q), cfg.d + 1);
  check_budget(std::pow(polys_ld, cfg.n + 1), budget, "P^n(F_q(t)) census");

  const auto polys = static_cast<std::size_t>(polys_ld);
  std::vector<ff::Coeffs> table(polys);
  for (std::size_t k = 0; k < polys; ++k) table[k] = ff::from_index(k, cfg.q);
  const unsigned len = cfg.n + 1;

  auto chunk = [&](std::size_t begin, std::size_t end) {
    Histogram hist(cfg.d + 1, 0);
    std::vector<ff::Coeffs> prefix_gcd(len);
    std::vector<int> prefix_deg(len);
    std::vector<std::size_t> index(len);
    for (std::size_t first = begin; first < end; ++first) {
      index[0] = first;
      prefix_gcd[0] = table[first];
      prefix_deg[0] = ff::degree(table[first]);
      if (len == 1) continue;
      std::size_t level = 1;
      index[1] = static_cast<std::size_t>(-1);
      while (level > 0) {
        if (index[level] + 1 == polys) {
          --level;
          continue;
        }
        ++index[level];
        const ff::Coeffs& poly = table[index[level]];
        prefix_gcd[level] = ff::gcd(prefix_gcd[level - 1], poly, cfg.q);
        prefix_deg[level] = std::max(prefix_deg[level - 1], ff::degree(poly));
        if (level == len - 1) {
          if (ff::degree(prefix_gcd[level]) == 0) ++hist[static_cast<std::size_t>(prefix_deg[level])];
        } else {
          ++level;
          index[level] = static_cast<std::size_t>(-1);
        }
      }
    }
    return hist;
  };
  Histogram total(cfg.d + 1, 0);
  for (const auto& part : parallel_chunks<Histogram>(polys, workers, chunk)) add_into(total, part);
  for (auto& c : total) {
    if (c % (cfg.q - 1) != 0) throw std::logic_error("coprime tuple count not divisible by q - 1");
    c /= cfg.q - 1;
  }
  return total;
}

std::uint64_t count_pn_ffield(const FFieldConfig& cfg, std::uint64_t budget, unsigned workers) {
  return count_pn_ffield_by_height(cfg, budget, workers).back();
}

Rational p1_zeta(std::uint32_t q, unsigned s) {
  using boost::multiprecision::pow;
  if (s < 2) throw InputError("zeta of P^1 has a pole at s = 1; need s >= 2");
  const Rational one(1);
  const Rational a = one - Rational(Integer(1), pow(Integer(q), s));
  const Rational b = one - Rational(Integer(1), pow(Integer(q), s - 1));
  return one / (a * b);
}

Rational serre_wan_constant_exact(std::uint32_t q, unsigned n) {
  using boost::multiprecision::pow;
  if (!ff::is_prime(q)) throw InputError("Serre-Wan constant implemented for prime q only");
  if (n < 1) throw InputError("projective dimension must be >= 1");
  return Rational(pow(Integer(q), n + 1)) / (p1_zeta(q, n + 1) * Rational(q - 1));
}

double serre_wan_constant(std::uint32_t q, unsigned n) { return to_double(serre_wan_constant_exact(q, n)); }

double PowerLaw::operator()(double x) const { return coefficient * std::pow(x, exponent); }

PredictionComparison compare(std::span<const Observation> observed, const PowerLaw& model) {
  if (observed.size() < 2) throw InputError("comparison needs at least two observations");
  PredictionComparison out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& o : observed) {
    const double predicted = model(o.abscissa);
    if (!(predicted > 0.0)) throw InputError("model prediction must be positive");
    const double obs = static_cast<double>(o.observed);
    out.rows.push_back({o.label, o.observed, predicted, std::abs(obs - predicted) / predicted});
    xs.push_back(o.abscissa);
    ys.push_back(obs);
  }
  out.fitted_exponent = fit_log_log(xs, ys).slope;
  return out;
}

}  // namespace arithfrac
