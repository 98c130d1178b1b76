#pragma once

// JSON and CSV I/O for spec files and reports. Integers are written as JSON
// numbers when they fit in 64 bits and as decimal strings otherwise; both
// forms are accepted on input.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "arithfrac/census.hpp"
#include "arithfrac/dimension.hpp"
#include "arithfrac/ifs.hpp"
#include "arithfrac/projective.hpp"

namespace arithfrac {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

Integer integer_from_json(const Json& j);
Json integer_to_json(const Integer& value);

/// "Z" or {"quadratic": d}.
RingSpec ring_from_json(const Json& j);
Json ring_to_json(const RingSpec& ring);

/// Z elements are integers; quadratic elements are [u, v].
RingElement element_from_json(const RingSpec& ring, const Json& j);
Json element_to_json(const RingElement& e);

/// {"ring": ..., "maps": [{"coeffs": [c0, ..., cn]}...], "base_points": [...]}
FractalSpec fractal_spec_from_json(const Json& j);
Json fractal_spec_to_json(const FractalSpec& spec);

struct ProjectiveSpec {
  std::vector<PolyEndo> endos;
  std::vector<ProjPoint> base_points;
};

/// {"endos": [{"components": [[{"coeff": c, "exps": [e0, ..., en]}...]...]}...],
///  "base_points": [[x0, ..., xn]...]}; base_points may be omitted.
ProjectiveSpec projective_spec_from_json(const Json& j);
PolyEndo endo_from_json(const Json& j);
Json endo_to_json(const PolyEndo& f);

Json point_to_json(const ProjPoint& p);
Json density_to_json(const DensitySum& d);

Json to_json(const FractalSample& sample);
Json to_json(const VerificationReport& report);
Json to_json(const ProjectiveVerificationReport& report);
Json to_json(const CountSeries& series);
Json to_json(const DimensionResult& result);
Json to_json(const GrowthFit& fit);
Json to_json(const MonotoneReport& report);
Json to_json(const ScalingDeviation& dev);
Json to_json(const PreperiodicReport& report);
Json to_json(const PredictionComparison& cmp);

/// threshold,count
void write_csv(std::ostream& out, const CountSeries& series);
/// x_or_d,observed,predicted,rel_error
void write_csv(std::ostream& out, const PredictionComparison& cmp);

/// Fixed-point text with `digits` decimals, used for CSV and text output.
std::string format_fixed(double value, int digits);

}  // namespace arithfrac
