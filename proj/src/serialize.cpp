#include "arithfrac/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "arithfrac/error.hpp"

namespace arithfrac {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InputError("expected an integer, got " + j.dump());
}

Json integer_to_json(const Integer& value) {
  if (auto small = to_int64(value)) return *small;
  return value.str();
}

RingSpec ring_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "Z") return RingSpec::integers();
  if (j.is_object() && j.contains("quadratic")) {
    const Integer d = integer_from_json(j.at("quadratic"));
    auto small = to_int64(d);
    if (!small) throw InputError("quadratic discriminant out of range");
    return RingSpec::quadratic(*small);
  }
  throw InputError("ring must be \"Z\" or {\"quadratic\": d}, got " + j.dump());
}

Json ring_to_json(const RingSpec& ring) {
  if (ring.is_integers()) return "Z";
  return Json{{"quadratic", ring.d()}};
}

RingElement element_from_json(const RingSpec& ring, const Json& j) {
  if (ring.is_integers()) return RingElement(ring, integer_from_json(j));
  if (!j.is_array() || j.size() != 2) throw InputError("quadratic element must be [u, v], got " + j.dump());
  return RingElement(ring, integer_from_json(j[0]), integer_from_json(j[1]));
}

Json element_to_json(const RingElement& e) {
  if (e.ring().is_integers()) return integer_to_json(e.u());
  return Json::array({integer_to_json(e.u()), integer_to_json(e.v())});
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const Json& require_array(const Json& j, const char* key) {
  const Json& a = require(j, key);
  if (!a.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  return a;
}

}  // namespace

FractalSpec fractal_spec_from_json(const Json& j) {
  const RingSpec ring = ring_from_json(require(j, "ring"));
  std::vector<SimilarityMap> maps;
  for (const auto& m : require_array(j, "maps")) {
    std::vector<RingElement> coeffs;
    for (const auto& c : require_array(m, "coeffs")) coeffs.push_back(element_from_json(ring, c));
    maps.emplace_back(ring, std::move(coeffs));
  }
  std::vector<RingElement> bases;
  for (const auto& b : require_array(j, "base_points")) bases.push_back(element_from_json(ring, b));
  return FractalSpec(ring, std::move(maps), std::move(bases));
}

Json fractal_spec_to_json(const FractalSpec& spec) {
  Json maps = Json::array();
  for (const auto& m : spec.maps()) {
    Json coeffs = Json::array();
    for (const auto& c : m.coefficients()) coeffs.push_back(element_to_json(c));
    maps.push_back(Json{{"coeffs", coeffs}});
  }
  Json bases = Json::array();
  for (const auto& b : spec.base_points()) bases.push_back(element_to_json(b));
  return Json{{"ring", ring_to_json(spec.ring())}, {"maps", maps}, {"base_points", bases}};
}

PolyEndo endo_from_json(const Json& j) {
  const Json& comps = require_array(j, "components");
  const std::size_t vars = comps.size();
  std::vector<HomogeneousPolynomial> components;
  for (const auto& comp : comps) {
    if (!comp.is_array()) throw InputError("endomorphism component must be a list of monomials");
    std::vector<Monomial> monos;
    for (const auto& m : comp) {
      Monomial mono;
      mono.coeff = integer_from_json(require(m, "coeff"));
      for (const auto& e : require_array(m, "exps")) {
        if (!e.is_number_unsigned()) throw InputError("exponents must be nonnegative integers");
        mono.exps.push_back(e.get<unsigned>());
      }
      monos.push_back(std::move(mono));
    }
    components.emplace_back(vars, std::move(monos));
  }
  return PolyEndo(std::move(components));
}

Json endo_to_json(const PolyEndo& f) {
  Json comps = Json::array();
  for (const auto& c : f.components()) {
    Json monos = Json::array();
    for (const auto& m : c.monomials()) monos.push_back(Json{{"coeff", integer_to_json(m.coeff)}, {"exps", m.exps}});
    comps.push_back(monos);
  }
  return Json{{"components", comps}};
}

ProjectiveSpec projective_spec_from_json(const Json& j) {
  ProjectiveSpec spec;
  for (const auto& e : require_array(j, "endos")) spec.endos.push_back(endo_from_json(e));
  if (spec.endos.empty()) throw InputError("projective spec needs at least one endomorphism");
  if (j.contains("base_points")) {
    for (const auto& p : require_array(j, "base_points")) {
      if (!p.is_array()) throw InputError("projective point must be a coordinate list");
      std::vector<Integer> coords;
      for (const auto& c : p) coords.push_back(integer_from_json(c));
      if (coords.size() != spec.endos.front().components().size()) {
        throw InputError("base point dimension does not match the endomorphisms");
      }
      spec.base_points.push_back(ProjPoint::normalize(std::move(coords)));
    }
  }
  return spec;
}

Json point_to_json(const ProjPoint& p) {
  Json coords = Json::array();
  for (const auto& c : p.coords()) coords.push_back(integer_to_json(c));
  return coords;
}

Json density_to_json(const DensitySum& d) {
  Json j;
  j["value"] = d.value;
  j["exact"] = d.exact ? Json(to_string(*d.exact)) : Json(nullptr);
  if (d.exact) {
    j["le_one"] = *d.exact <= 1;
    j["ge_one"] = *d.exact >= 1;
  } else {
    j["le_one"] = d.value <= 1.0;
    j["ge_one"] = d.value >= 1.0;
  }
  return j;
}

Json to_json(const FractalSample& sample) {
  Json elems = Json::array();
  for (const auto& e : sample.elements) elems.push_back(element_to_json(e));
  return Json{{"window", integer_to_json(sample.window)},
              {"exact", sample.exact},
              {"count", sample.elements.size()},
              {"elements", elems}};
}

namespace {

template <class Element, class ToJson>
Json report_to_json(const BasicVerificationReport<Element>& r, ToJson elem) {
  Json j;
  j["status"] = to_string(r.status);
  j["window"] = integer_to_json(r.window);
  j["safe_window"] = integer_to_json(r.safe_window);
  j["exact_window"] = r.exact_window;
  j["checked"] = r.checked;
  j["overlap_count"] = r.overlap_count;
  Json overlaps = Json::array();
  for (const auto& w : r.overlaps) {
    overlaps.push_back(Json{{"element", elem(w.element)}, {"maps", {w.first_map, w.second_map}}});
  }
  j["overlaps"] = overlaps;
  auto list = [&](const std::vector<Element>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(elem(e));
    return a;
  };
  j["gaps"] = list(r.gaps);
  j["uncovered_seeds"] = list(r.uncovered_seeds);
  j["seed_only"] = list(r.seed_only);
  if (r.density_sum) j["density_sum"] = density_to_json(*r.density_sum);
  return j;
}

}  // namespace

Json to_json(const VerificationReport& report) {
  return report_to_json(report, [](const RingElement& e) { return element_to_json(e); });
}

Json to_json(const ProjectiveVerificationReport& report) {
  return report_to_json(report, [](const ProjPoint& p) { return point_to_json(p); });
}

Json to_json(const CountSeries& series) {
  Json thresholds = Json::array();
  for (const auto& t : series.thresholds) thresholds.push_back(integer_to_json(t));
  return Json{{"thresholds", thresholds}, {"counts", series.counts}};
}

Json to_json(const DimensionResult& result) {
  return Json{{"s", result.s}, {"residual", result.residual}, {"iterations", result.iterations}};
}

Json to_json(const GrowthFit& fit) {
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r2", fit.r2},
              {"points_used", fit.points_used},
              {"warnings", fit.warnings}};
}

Json to_json(const MonotoneReport& report) {
  return Json{{"subset_confirmed", report.subset_confirmed},
              {"counterexample", report.counterexample ? element_to_json(*report.counterexample) : Json(nullptr)},
              {"checked", report.checked},
              {"dim_a", report.dim_a},
              {"dim_b", report.dim_b},
              {"consistent", report.consistent}};
}

Json to_json(const ScalingDeviation& dev) {
  return Json{{"samples", dev.samples}, {"max_deviation", dev.max_deviation}, {"mean_deviation", dev.mean_deviation}};
}

Json to_json(const PreperiodicReport& report) {
  Json points = Json::array();
  for (const auto& p : report.preperiodic) {
    points.push_back(Json{{"point", point_to_json(p.point)},
                          {"value", affine_label(p.point)},
                          {"tail", p.tail},
                          {"cycle", p.cycle}});
  }
  Json undetermined = Json::array();
  for (const auto& p : report.undetermined) undetermined.push_back(point_to_json(p));
  return Json{{"h_search", report.h_search},
              {"iteration_cap", report.iteration_cap},
              {"h_escape", integer_to_json(report.h_escape)},
              {"seeds", report.seeds},
              {"escaped", report.escaped},
              {"preperiodic", points},
              {"undetermined", undetermined}};
}

Json to_json(const PredictionComparison& cmp) {
  Json rows = Json::array();
  for (const auto& r : cmp.rows) {
    rows.push_back(Json{{"x_or_d", r.label}, {"observed", r.observed}, {"predicted", r.predicted}, {"rel_error", r.rel_error}});
  }
  return Json{{"rows", rows}, {"fitted_exponent", cmp.fitted_exponent}};
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

void write_csv(std::ostream& out, const CountSeries& series) {
  out << "threshold,count\n";
  for (std::size_t k = 0; k < series.thresholds.size(); ++k) {
    out << series.thresholds[k].str() << ',' << series.counts[k] << '\n';
  }
}

void write_csv(std::ostream& out, const PredictionComparison& cmp) {
  out << "x_or_d,observed,predicted,rel_error\n";
  for (const auto& r : cmp.rows) {
    out << r.label << ',' << r.observed << ',' << format_fixed(r.predicted, 6) << ',' << format_fixed(r.rel_error, 8)
        << '\n';
  }
}

}  // namespace arithfrac
