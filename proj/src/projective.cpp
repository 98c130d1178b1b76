#include "arithfrac/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "arithfrac/error.hpp"
#include "arithfrac/parallel.hpp"
#include "report_builder.hpp"

namespace arithfrac {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::pow;

ProjPoint ProjPoint::normalize(std::vector<Integer> coords) {
  if (coords.empty()) throw InputError("projective point needs at least one coordinate");
  Integer g = 0;
  for (const auto& c : coords) g = gcd(g, abs(c));
  if (g == 0) throw InputError("projective point cannot have all coordinates zero");
  auto first = std::find_if(coords.begin(), coords.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  if (g != 1) {
    for (auto& c : coords) c /= g;
  }
  return ProjPoint(std::move(coords));
}

Integer ProjPoint::height() const {
  Integer h = 0;
  for (const auto& c : coords_) h = std::max(h, Integer(abs(c)));
  return h;
}

std::string ProjPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ":";
    out += coords_[i].str();
  }
  return out + ")";
}

std::strong_ordering operator<=>(const ProjPoint& p, const ProjPoint& q) {
  if (p.coords_.size() != q.coords_.size()) return p.coords_.size() <=> q.coords_.size();
  const Integer hp = p.height();
  const Integer hq = q.height();
  if (hp != hq) return hp < hq ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < p.coords_.size(); ++i) {
    if (p.coords_[i] != q.coords_[i]) {
      return p.coords_[i] < q.coords_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t ProjPointHash::operator()(const ProjPoint& p) const noexcept {
  std::size_t seed = p.coords().size();
  for (const auto& c : p.coords()) boost::hash_combine(seed, std::hash<Integer>{}(c));
  return seed;
}

HeightValue height(const ProjPoint& p) {
  HeightValue v;
  v.H = p.height();
  v.h = log_of(v.H);
  return v;
}

HomogeneousPolynomial::HomogeneousPolynomial(std::size_t variables, std::vector<Monomial> monomials)
    : variables_(variables) {
  bool have_degree = false;
  for (auto& m : monomials) {
    if (m.exps.size() != variables_) {
      throw InputError("monomial has " + std::to_string(m.exps.size()) + " exponents, expected " +
                       std::to_string(variables_));
    }
    if (m.coeff == 0) continue;
    const unsigned deg = std::accumulate(m.exps.begin(), m.exps.end(), 0u);
    if (have_degree && deg != degree_) throw InputError("polynomial is not homogeneous");
    degree_ = deg;
    have_degree = true;
    monomials_.push_back(std::move(m));
  }
}

Integer HomogeneousPolynomial::abs_coefficient_sum() const {
  Integer s = 0;
  for (const auto& m : monomials_) s += abs(m.coeff);
  return s;
}

Integer HomogeneousPolynomial::operator()(std::span<const Integer> x) const {
  Integer total = 0;
  for (const auto& m : monomials_) {
    Integer term = m.coeff;
    for (std::size_t i = 0; i < variables_; ++i) {
      if (m.exps[i] != 0) term *= pow(x[i], m.exps[i]);
    }
    total += term;
  }
  return total;
}

PolyEndo::PolyEndo(std::vector<HomogeneousPolynomial> components) : components_(std::move(components)) {
  if (components_.size() < 2) throw InputError("endomorphism needs at least two components");
  bool have_degree = false;
  for (const auto& c : components_) {
    if (c.variables() != components_.size()) throw InputError("component has the wrong number of variables");
    if (c.is_zero()) continue;
    if (have_degree && c.degree() != degree_) throw InputError("components have different degrees");
    degree_ = c.degree();
    have_degree = true;
  }
  if (!have_degree) throw InputError("endomorphism has only zero components");
  if (degree_ < 1) throw InputError("endomorphism degree must be >= 1");
}

Integer PolyEndo::coefficient_bound() const {
  Integer best = 0;
  for (const auto& c : components_) best = std::max(best, c.abs_coefficient_sum());
  return best;
}

ProjPoint PolyEndo::operator()(const ProjPoint& p) const {
  if (p.coords().size() != components_.size()) throw InputError("point dimension does not match endomorphism");
  std::vector<Integer> image;
  image.reserve(components_.size());
  bool all_zero = true;
  for (const auto& c : components_) {
    image.push_back(c(p.coords()));
    all_zero = all_zero && image.back() == 0;
  }
  if (all_zero) throw IndeterminacyError("endomorphism is not defined at " + p.to_string(), p.to_string());
  return ProjPoint::normalize(std::move(image));
}

namespace {

HomogeneousPolynomial binary_form(std::span<const std::int64_t> coeffs) {
  const unsigned m = static_cast<unsigned>(coeffs.size()) - 1;
  std::vector<Monomial> monos;
  for (unsigned k = 0; k <= m; ++k) monos.push_back({Integer(coeffs[k]), {k, m - k}});
  return HomogeneousPolynomial(2, std::move(monos));
}

}  // namespace

PolyEndo binary_form_endo(std::span<const std::int64_t> fx, std::span<const std::int64_t> gx) {
  if (fx.empty() || fx.size() != gx.size()) throw InputError("binary forms need equal, nonzero lengths");
  return PolyEndo({binary_form(fx), binary_form(gx)});
}

PolyEndo homogenize(std::span<const std::int64_t> coeffs) {
  if (coeffs.size() < 2) throw InputError("polynomial must have degree >= 1");
  std::vector<std::int64_t> y_power(coeffs.size(), 0);
  y_power.front() = 1;
  return binary_form_endo(coeffs, y_power);
}

std::vector<ProjPoint> orbit_generate(std::span<const PolyEndo> endos, std::span<const ProjPoint> base,
                                      const Integer& h_max) {
  if (endos.empty()) throw InputError("orbit needs at least one endomorphism");
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  std::vector<ProjPoint> frontier;
  for (const auto& p : base) {
    if (p.height() > h_max) throw InputError("base point " + p.to_string() + " exceeds the height bound");
    if (seen.insert(p).second) frontier.push_back(p);
  }
  std::vector<ProjPoint> next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& p : frontier) {
      for (const auto& f : endos) {
        ProjPoint q = f(p);
        if (q.height() <= h_max && seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier.swap(next);
  }
  std::vector<ProjPoint> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

Integer projective_safe_window(std::span<const PolyEndo> endos, const Integer& h_max, double margin) {
  if (!(margin > 0.0)) throw InputError("margin must be positive");
  Integer c = 1;
  unsigned m = 1;
  for (const auto& f : endos) {
    c = std::max(c, f.coefficient_bound());
    m = std::max(m, f.degree());
  }
  if (h_max < c) return 0;
  // Largest y with C (y margin)^m <= h_max, refined exactly from a float guess.
  const Rational exact_margin(margin);
  const Integer margin_num = pow(Integer(boost::multiprecision::numerator(exact_margin)), m);
  const Integer margin_den = pow(Integer(boost::multiprecision::denominator(exact_margin)), m);
  auto fits = [&](const Integer& y) { return c * pow(y, m) * margin_num <= h_max * margin_den; };
  const double log_y = (log_of(h_max) - log_of(c)) / m - std::log(margin);
  Integer y = log_y < 0.0 ? Integer(0) : Integer(std::floor(std::exp(log_y)));
  while (y > 0 && !fits(y)) --y;
  while (fits(y + 1)) ++y;
  return std::min(y, h_max);
}

ProjectiveVerificationReport verify_projective_self_similar(std::span<const PolyEndo> endos,
                                                            std::span<const ProjPoint> base,
                                                            const Integer& h_max, double margin,
                                                            std::size_t max_witnesses) {
  if (endos.empty()) throw InputError("verification needs at least one endomorphism");
  if (base.empty()) throw InputError("verification needs at least one base point");
  const Integer safe = projective_safe_window(endos, h_max, margin);
  Integer max_base = 0;
  for (const auto& p : base) max_base = std::max(max_base, p.height());
  if (safe < max_base) {
    throw InputError("window too small: safe height " + to_string(safe) + " is below the largest base height " +
                     to_string(max_base));
  }
  const std::vector<ProjPoint> orbit = orbit_generate(endos, base, h_max);

  std::vector<detail::ImageHit<ProjPoint>> hits;
  for (const auto& p : orbit) {
    for (std::size_t i = 0; i < endos.size(); ++i) {
      ProjPoint q = endos[i](p);
      if (q.height() <= safe) hits.push_back({std::move(q), i + 1});
    }
  }

  ProjectiveVerificationReport report;
  report.window = h_max;
  report.safe_window = safe;
  detail::assemble_report(
      report, orbit, std::move(hits), std::vector<ProjPoint>(base.begin(), base.end()),
      [&](const ProjPoint& p) { return p.height() <= safe; },
      [&](const ProjPoint& p) {
        return std::any_of(endos.begin(), endos.end(), [&](const PolyEndo& f) { return f(p) == p; });
      },
      max_witnesses);
  return report;
}

ScalingDeviation check_height_scaling(const PolyEndo& f, std::span<const ProjPoint> sample) {
  if (sample.empty()) throw InputError("height scaling needs a nonempty sample");
  ScalingDeviation out;
  double total = 0.0;
  for (const auto& p : sample) {
    const Integer image_height = f(p).height();
    const Integer scaled = pow(p.height(), f.degree());
    const double dev = std::abs(log_ratio(image_height, scaled));
    out.max_deviation = std::max(out.max_deviation, dev);
    total += dev;
  }
  out.samples = sample.size();
  out.mean_deviation = total / static_cast<double>(sample.size());
  return out;
}

std::vector<ProjPoint> random_p1_points(std::size_t count, std::int64_t h_max, std::uint64_t seed) {
  if (h_max < 1) throw InputError("height bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-h_max, h_max);
  std::vector<ProjPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::int64_t x = coord(rng);
    const std::int64_t y = coord(rng);
    if (x == 0 && y == 0) continue;
    out.push_back(ProjPoint::normalize({Integer(x), Integer(y)}));
  }
  return out;
}

std::vector<ProjPoint> p1_points_up_to(std::int64_t h_max) {
  std::vector<ProjPoint> out;
  if (h_max < 1) return out;
  out.push_back(ProjPoint::normalize({Integer(0), Integer(1)}));
  out.push_back(ProjPoint::normalize({Integer(1), Integer(0)}));
  for (std::int64_t x = 1; x <= h_max; ++x) {
    for (std::int64_t y = -h_max; y <= h_max; ++y) {
      if (y != 0 && std::gcd(x, y) == 1) out.push_back(ProjPoint::normalize({Integer(x), Integer(y)}));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct SeedScan {
  std::vector<PreperiodicPoint> preperiodic;
  std::size_t escaped = 0;
  std::vector<ProjPoint> undetermined;
};

}  // namespace

PreperiodicReport find_preperiodic(const PolyEndo& f, std::int64_t h_search, std::size_t iteration_cap,
                                   const Integer& h_escape, unsigned workers) {
  if (f.dimension() != 1) throw InputError("preperiodic search is implemented on P^1 only");
  if (f.degree() < 2) throw InputError("preperiodic search needs degree >= 2");
  if (h_search < 1 || iteration_cap < 1 || h_escape < 1) throw InputError("search caps must be positive");

  const std::vector<ProjPoint> seeds = p1_points_up_to(h_search);
  auto scan = [&](std::size_t begin, std::size_t end) {
    SeedScan part;
    std::vector<ProjPoint> orbit;
    for (std::size_t s = begin; s < end; ++s) {
      orbit.assign(1, seeds[s]);
      bool classified = false;
      for (std::size_t step = 0; step < iteration_cap && !classified; ++step) {
        ProjPoint next = f(orbit.back());
        auto hit = std::find(orbit.begin(), orbit.end(), next);
        if (hit != orbit.end()) {
          const auto tail = static_cast<std::size_t>(hit - orbit.begin());
          part.preperiodic.push_back({seeds[s], tail, orbit.size() - tail});
          classified = true;
        } else if (next.height() > h_escape) {
          ++part.escaped;
          classified = true;
        } else {
          orbit.push_back(std::move(next));
        }
      }
      if (!classified) part.undetermined.push_back(seeds[s]);
    }
    return part;
  };

  PreperiodicReport report;
  report.h_search = h_search;
  report.iteration_cap = iteration_cap;
  report.h_escape = h_escape;
  report.seeds = seeds.size();
  for (auto& part : parallel_chunks<SeedScan>(seeds.size(), workers, scan)) {
    std::move(part.preperiodic.begin(), part.preperiodic.end(), std::back_inserter(report.preperiodic));
    std::move(part.undetermined.begin(), part.undetermined.end(), std::back_inserter(report.undetermined));
    report.escaped += part.escaped;
  }
  return report;
}

std::string affine_label(const ProjPoint& p) {
  if (p.dimension() != 1) return p.to_string();
  const Integer& x = p.coords()[0];
  const Integer& y = p.coords()[1];
  if (y == 0) return "inf";
  const Integer num = y < 0 ? Integer(-x) : x;
  const Integer den = abs(y);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace arithfrac
