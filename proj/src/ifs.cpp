#include "arithfrac/ifs.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "arithfrac/error.hpp"
#include "report_builder.hpp"

namespace arithfrac {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

// Minimal X >= 0 with pred(X), for a predicate monotone in X.
template <class Pred>
Integer least_satisfying(Pred pred) {
  if (pred(Integer(0))) return 0;
  Integer hi = 1;
  while (!pred(hi)) hi *= 2;
  Integer lo = hi / 2;  // pred(lo) false
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

Integer sum_lower_abs(const SimilarityMap& map) {
  Integer s = 0;
  for (int j = 0; j < map.degree(); ++j) s += map.coefficients()[j].norm();
  return s;
}

// Norm bound beyond which `map` strictly increases norms.
Integer escape_norm(const SimilarityMap& map) {
  if (!map.is_affine()) return sum_lower_abs(map) + 1;
  const Integer a = map.leading().norm();
  const Integer b = map.constant().norm();
  if (map.ring().is_integers()) {
    // X (|a| - 1) >= |b|
    const Integer den = a - 1;
    return (b + den - 1) / den;
  }
  // sqrt(X) (sqrt(A) - 1) >= sqrt(B)  <=>  XA - B - X >= 2 sqrt(BX)
  return least_satisfying([&](const Integer& x) {
    const Integer lhs = x * a - b - x;
    return lhs >= 0 && lhs * lhs >= 4 * b * x;
  });
}

Integer image_window(const SimilarityMap& map, const Integer& window) {
  const Integer a = map.leading().norm();
  if (!map.is_affine()) {
    const Integer lower = sum_lower_abs(map);
    if (window < lower) return -1;
    // g(t) = |a| t^n - sum |c_j| t^j is increasing for t > lower.
    const Integer t = window + 1;
    Integer g = a * pow(t, static_cast<unsigned>(map.degree()));
    for (int j = 0; j < map.degree(); ++j) {
      g -= map.coefficients()[j].norm() * pow(t, static_cast<unsigned>(j));
    }
    return g - 1;
  }
  const Integer b = map.constant().norm();
  if (map.ring().is_integers()) return a * window - b;
  // (sqrt(A X) - sqrt(B))^2 = A X + B - 2 sqrt(A B X), rounded down.
  if (a * window < b) return -1;
  return a * window + b - ceil_sqrt(4 * a * b * window);
}

std::vector<std::size_t> fixing_maps(const FractalSpec& spec, const RingElement& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.maps().size(); ++i) {
    if (spec.maps()[i](p) == p) out.push_back(i);
  }
  return out;
}

// Fixed-width kernel for affine specs whose window fits in 62 bits.
// Elements inside such a window have 64-bit coordinates, and one affine step
// from them cannot overflow 128-bit intermediates.
struct SmallElement {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend auto operator<=>(const SmallElement&, const SmallElement&) = default;
};

struct SmallElementHash {
  std::size_t operator()(const SmallElement& e) const noexcept {
    std::size_t seed = std::hash<std::int64_t>{}(e.u);
    boost::hash_combine(seed, e.v);
    return seed;
  }
};

class SmallKernel {
 public:
  static std::optional<SmallKernel> make(const FractalSpec& spec, const Integer& window) {
    if (!spec.all_affine() || window > (Integer(1) << 62)) return std::nullopt;
    SmallKernel k;
    k.d_ = spec.ring().d();
    // Quadratic products d * c * x need |d|, |c| <= 2^31 next to |x| <= 2^31.
    const std::int64_t coeff_limit = k.d_ == 0 ? INT64_MAX / 2 : std::int64_t{1} << 31;
    if (k.d_ < -coeff_limit) return std::nullopt;
    k.window_ = static_cast<__int128>(window.convert_to<std::int64_t>());
    for (const auto& m : spec.maps()) {
      std::array<std::int64_t, 4> c{};
      const std::array<const Integer*, 4> src{&m.leading().u(), &m.leading().v(), &m.constant().u(), &m.constant().v()};
      for (std::size_t i = 0; i < 4; ++i) {
        auto small = to_int64(*src[i]);
        if (!small || *small < -coeff_limit || *small > coeff_limit) return std::nullopt;
        c[i] = *small;
      }
      k.maps_.push_back(c);
    }
    for (const auto& p : spec.base_points()) {
      auto u = to_int64(p.u());
      auto v = to_int64(p.v());
      if (!u || !v) return std::nullopt;
      k.bases_.push_back({*u, *v});
    }
    return k;
  }

  std::size_t map_count() const noexcept { return maps_.size(); }
  std::span<const SmallElement> bases() const noexcept { return bases_; }

  /// phi_i(x) if its norm is <= bound (bound <= window), else nullopt.
  std::optional<SmallElement> apply_within(std::size_t i, const SmallElement& x, __int128 bound) const {
    const auto& c = maps_[i];
    __int128 u = static_cast<__int128>(c[0]) * x.u + c[2];
    __int128 v = static_cast<__int128>(c[0]) * x.v + c[3];
    if (d_ != 0) {
      u += static_cast<__int128>(d_) * c[1] * x.v;
      v += static_cast<__int128>(c[1]) * x.u;
    }
    constexpr __int128 limit = static_cast<__int128>(1) << 62;
    if (u > limit || u < -limit || v > limit || v < -limit) return std::nullopt;
    const SmallElement y{static_cast<std::int64_t>(u), static_cast<std::int64_t>(v)};
    if (norm(y) > bound) return std::nullopt;
    return y;
  }

  /// Saturates above the window instead of overflowing.
  __int128 norm(const SmallElement& x) const {
    if (d_ == 0) return x.u < 0 ? -static_cast<__int128>(x.u) : x.u;
    constexpr std::int64_t root = std::int64_t{1} << 31;
    if (x.u > root || x.u < -root || x.v > root || x.v < -root) return window_ + 1;
    const __int128 n = static_cast<__int128>(x.u) * x.u + static_cast<__int128>(-d_) * x.v * x.v;
    return n;
  }

  std::vector<SmallElement> generate() const {
    std::unordered_set<SmallElement, SmallElementHash> seen;
    std::vector<SmallElement> frontier;
    for (const auto& p : bases_) {
      if (seen.insert(p).second) frontier.push_back(p);
    }
    std::vector<SmallElement> next;
    while (!frontier.empty()) {
      next.clear();
      for (const auto& x : frontier) {
        for (std::size_t i = 0; i < maps_.size(); ++i) {
          if (auto y = apply_within(i, x, window_); y && seen.insert(*y).second) next.push_back(*y);
        }
      }
      frontier.swap(next);
    }
    std::vector<SmallElement> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  RingElement to_ring(const RingSpec& ring, const SmallElement& x) const { return RingElement(ring, x.u, x.v); }

 private:
  std::int64_t d_ = 0;
  __int128 window_ = 0;
  std::vector<std::array<std::int64_t, 4>> maps_;
  std::vector<SmallElement> bases_;
};

}  // namespace

SimilarityMap::SimilarityMap(RingSpec ring, std::vector<RingElement> coefficients)
    : ring_(ring), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 2) throw InputError("similarity map needs degree >= 1");
  for (const auto& c : coefficients_) {
    if (!(c.ring() == ring_)) throw InputError("similarity map coefficient from another ring");
  }
  if (leading().is_zero()) throw InputError("similarity map has zero leading coefficient");
  if (is_affine() && leading().norm() <= 1) {
    throw InputError("affine similarity map needs norm(a) > 1, got a = " + leading().to_string());
  }
  if (!is_affine() && !ring_.is_integers()) {
    throw InputError("polynomial similarity maps of degree >= 2 are supported over Z only");
  }
}

SimilarityMap SimilarityMap::affine(const RingElement& a, const RingElement& b) {
  return SimilarityMap(a.ring(), {b, a});
}

RingElement SimilarityMap::operator()(const RingElement& x) const {
  RingElement acc = coefficients_.back();
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FractalSpec::FractalSpec(RingSpec ring, std::vector<SimilarityMap> maps, std::vector<RingElement> base_points)
    : ring_(ring), maps_(std::move(maps)), base_points_(std::move(base_points)) {
  if (maps_.empty()) throw InputError("fractal spec needs at least one similarity map");
  if (base_points_.empty()) throw InputError("fractal spec needs at least one base point");
  for (const auto& m : maps_) {
    if (!(m.ring() == ring_)) throw InputError("similarity map over a different ring");
  }
  for (const auto& p : base_points_) {
    if (!(p.ring() == ring_)) throw InputError("base point from a different ring");
  }
}

FractalSpec FractalSpec::digits(const RingElement& base, std::span<const RingElement> digits) {
  std::vector<SimilarityMap> maps;
  for (const auto& d : digits) maps.push_back(SimilarityMap::affine(base, d));
  return FractalSpec(base.ring(), std::move(maps), {RingElement::zero(base.ring())});
}

FractalSpec FractalSpec::integer_digits(std::int64_t base, std::span<const std::int64_t> digits) {
  const auto z = RingSpec::integers();
  std::vector<RingElement> ds;
  for (auto d : digits) ds.emplace_back(z, d);
  return FractalSpec::digits(RingElement(z, base), ds);
}

bool FractalSpec::all_affine() const noexcept {
  return std::all_of(maps_.begin(), maps_.end(), [](const auto& m) { return m.is_affine(); });
}

Integer FractalSpec::max_base_norm() const {
  Integer best = 0;
  for (const auto& p : base_points_) best = std::max(best, p.norm());
  return best;
}

bool FractalSample::contains(const RingElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

Integer escape_norm(const FractalSpec& spec) {
  Integer best = 0;
  for (const auto& m : spec.maps()) best = std::max(best, escape_norm(m));
  return best;
}

Integer image_window(const FractalSpec& spec, const Integer& window) {
  std::optional<Integer> best;
  for (const auto& m : spec.maps()) {
    Integer y = image_window(m, window);
    if (!best || y < *best) best = std::move(y);
  }
  return *best;
}

FractalSample generate(const FractalSpec& spec, const Integer& window) {
  if (window < spec.max_base_norm()) {
    throw InputError("window " + to_string(window) + " is smaller than the largest base point norm");
  }
  FractalSample sample;
  sample.window = window;
  sample.exact = window >= escape_norm(spec);
  if (auto kernel = SmallKernel::make(spec, window)) {
    const auto small = kernel->generate();
    sample.elements.reserve(small.size());
    for (const auto& x : small) sample.elements.push_back(kernel->to_ring(spec.ring(), x));
    return sample;
  }

  return detail::generate_wide(spec, window);
}

FractalSample detail::generate_wide(const FractalSpec& spec, const Integer& window) {
  if (window < spec.max_base_norm()) {
    throw InputError("window " + to_string(window) + " is smaller than the largest base point norm");
  }
  FractalSample sample;
  sample.window = window;
  sample.exact = window >= escape_norm(spec);
  std::unordered_set<RingElement, RingElementHash> seen;
  std::vector<RingElement> frontier;
  for (const auto& p : spec.base_points()) {
    if (seen.insert(p).second) frontier.push_back(p);
  }
  std::vector<RingElement> next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& x : frontier) {
      for (const auto& m : spec.maps()) {
        RingElement y = m(x);
        if (y.norm() <= window && seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier.swap(next);
  }
  sample.elements.assign(seen.begin(), seen.end());
  std::sort(sample.elements.begin(), sample.elements.end());
  return sample;
}

const char* to_string(VerificationStatus status) {
  switch (status) {
    case VerificationStatus::verified: return "verified";
    case VerificationStatus::overlap: return "overlap";
    case VerificationStatus::gap: return "gap";
    case VerificationStatus::seed_not_covered: return "seed-not-covered";
  }
  return "unknown";
}

VerificationReport verify_self_similar(const FractalSpec& spec, const Integer& window,
                                       std::size_t max_witnesses) {
  const Integer safe = std::min(window, image_window(spec, window));
  if (safe <= spec.max_base_norm()) {
    throw InputError("window too small: safe window " + to_string(safe) +
                     " does not exceed the largest base point norm " + to_string(spec.max_base_norm()));
  }
  std::vector<RingElement> bases(spec.base_points().begin(), spec.base_points().end());
  auto is_fixed = [&](const RingElement& p) { return !fixing_maps(spec, p).empty(); };

  if (auto kernel = SmallKernel::make(spec, window)) {
    const auto small = kernel->generate();
    const auto bound = static_cast<__int128>(safe.convert_to<std::int64_t>());
    std::vector<detail::ImageHit<SmallElement>> hits;
    for (const auto& x : small) {
      for (std::size_t i = 0; i < kernel->map_count(); ++i) {
        if (auto y = kernel->apply_within(i, x, bound)) hits.push_back({*y, i + 1});
      }
    }
    BasicVerificationReport<SmallElement> fast;
    detail::assemble_report(
        fast, small, std::move(hits), std::vector<SmallElement>(kernel->bases().begin(), kernel->bases().end()),
        [&](const SmallElement& x) { return kernel->norm(x) <= bound; },
        [&](const SmallElement& p) { return is_fixed(kernel->to_ring(spec.ring(), p)); }, max_witnesses);

    VerificationReport report;
    report.status = fast.status;
    report.window = window;
    report.safe_window = safe;
    report.exact_window = window >= escape_norm(spec);
    report.checked = fast.checked;
    report.overlap_count = fast.overlap_count;
    const auto lift = [&](const SmallElement& x) { return kernel->to_ring(spec.ring(), x); };
    for (const auto& w : fast.overlaps) report.overlaps.push_back({lift(w.element), w.first_map, w.second_map});
    for (const auto& x : fast.gaps) report.gaps.push_back(lift(x));
    for (const auto& x : fast.uncovered_seeds) report.uncovered_seeds.push_back(lift(x));
    for (const auto& x : fast.seed_only) report.seed_only.push_back(lift(x));
    report.density_sum = density_sum(spec);
    return report;
  }

  const FractalSample sample = generate(spec, window);

  std::vector<detail::ImageHit<RingElement>> hits;
  for (const auto& x : sample.elements) {
    for (std::size_t i = 0; i < spec.maps().size(); ++i) {
      RingElement y = spec.maps()[i](x);
      if (y.norm() <= safe) hits.push_back({std::move(y), i + 1});
    }
  }

  VerificationReport report;
  report.window = window;
  report.safe_window = safe;
  report.exact_window = sample.exact;
  report.density_sum = density_sum(spec);
  detail::assemble_report(
      report, sample.elements, std::move(hits), std::move(bases), [&](const RingElement& x) { return x.norm() <= safe; },
      is_fixed, max_witnesses);
  return report;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::yes: return "yes";
    case Membership::no: return "no";
    case Membership::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

FractalSpec require_affine(FractalSpec spec) {
  if (!spec.all_affine()) throw InputError("membership is supported for affine maps only");
  return spec;
}

}  // namespace

MembershipOracle::MembershipOracle(FractalSpec spec)
    : spec_(require_affine(std::move(spec))),
      ball_(generate(spec_, std::max(escape_norm(spec_), spec_.max_base_norm()))) {}

Membership MembershipOracle::operator()(const RingElement& x, std::size_t depth_cap) const {
  if (!(x.ring() == spec_.ring())) throw InputError("element from a different ring");
  std::unordered_map<RingElement, Membership, RingElementHash> memo;
  std::unordered_set<RingElement, RingElementHash> in_progress;

  auto decide = [&](auto&& self, const RingElement& e, std::size_t depth) -> Membership {
    if (e.norm() <= ball_.window) return ball_.contains(e) ? Membership::yes : Membership::no;
    if (depth >= depth_cap) return Membership::unknown;
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    // Norms strictly decrease outside the ball, so a revisit means a bug upstream.
    if (!in_progress.insert(e).second) return Membership::unknown;
    Membership result = Membership::no;
    for (const auto& m : spec_.maps()) {
      auto pre = try_divide(e - m.constant(), m.leading());
      if (!pre) continue;
      const Membership sub = self(self, *pre, depth + 1);
      if (sub == Membership::yes) {
        result = Membership::yes;
        break;
      }
      if (sub == Membership::unknown) result = Membership::unknown;
    }
    in_progress.erase(e);
    memo.emplace(e, result);
    return result;
  };
  return decide(decide, x, 0);
}

Membership member(const FractalSpec& spec, const RingElement& x, std::size_t depth_cap) {
  return MembershipOracle(spec)(x, depth_cap);
}

CountSeries count_series(const FractalSpec& spec, std::span<const Integer> thresholds) {
  if (thresholds.empty()) throw InputError("count series needs at least one threshold");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (thresholds[k] < 0) throw InputError("thresholds must be nonnegative");
    if (k > 0 && thresholds[k] <= thresholds[k - 1]) throw InputError("thresholds must be strictly ascending");
  }
  const Integer& window = thresholds.back();
  const FractalSample sample = generate(spec, std::max(window, spec.max_base_norm()));
  std::vector<Integer> norms;
  norms.reserve(sample.elements.size());
  for (const auto& e : sample.elements) norms.push_back(e.norm());
  std::sort(norms.begin(), norms.end());
  CountSeries series;
  series.thresholds.assign(thresholds.begin(), thresholds.end());
  for (const auto& t : thresholds) {
    series.counts.push_back(static_cast<std::uint64_t>(std::upper_bound(norms.begin(), norms.end(), t) - norms.begin()));
  }
  return series;
}

DensitySum density_sum(const FractalSpec& spec) {
  DensitySum out;
  if (spec.all_affine()) {
    Rational sum = 0;
    for (const auto& m : spec.maps()) sum += Rational(Integer(1), m.leading().norm());
    out.value = to_double(sum);
    out.exact = std::move(sum);
    return out;
  }
  for (const auto& m : spec.maps()) out.value += std::exp(-log_of(m.leading().norm()) / m.degree());
  return out;
}

}  // namespace arithfrac
