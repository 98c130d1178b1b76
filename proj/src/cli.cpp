#include "arithfrac/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arithfrac/census.hpp"
#include "arithfrac/dimension.hpp"
#include "arithfrac/error.hpp"
#include "arithfrac/ifs.hpp"
#include "arithfrac/projective.hpp"
#include "arithfrac/serialize.hpp"

namespace arithfrac::cli {

namespace {

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<BoxWeight> parse_weights(const std::string& text) {
  std::vector<BoxWeight> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 2) throw InputError("weight must be N or N:n, got '" + item + "'");
    BoxWeight w;
    w.base = parse_integer(parts[0]);
    if (parts.size() == 2) {
      const auto deg = to_int64(parse_integer(parts[1]));
      if (!deg || *deg < 1 || *deg > 1'000'000) throw InputError("weight degree must be a positive integer");
      w.degree = static_cast<int>(*deg);
    }
    out.push_back(std::move(w));
  }
  if (out.empty()) throw InputError("no weights given");
  return out;
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_integer(item));
  return out;
}

RingElement parse_element(const RingSpec& ring, const std::string& text) {
  const auto parts = split(text, ',');
  if (ring.is_integers()) {
    if (parts.size() != 1) throw InputError("integer element expected, got '" + text + "'");
    return RingElement(ring, parse_integer(parts[0]));
  }
  if (parts.size() != 2) throw InputError("quadratic element must be written u,v; got '" + text + "'");
  return RingElement(ring, parse_integer(parts[0]), parse_integer(parts[1]));
}

const PolyEndo& pick_endo(const ProjectiveSpec& spec, std::size_t index) {
  if (index < 1 || index > spec.endos.size()) {
    throw InputError("--map must be between 1 and " + std::to_string(spec.endos.size()));
  }
  return spec.endos[index - 1];
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct Common {
  std::string output;
  std::string format = "json";
  unsigned workers = 1;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction, verification and dimension of arithmetic self-similar sets", "arithfrac"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common common;
  common.workers = default_workers();
  int exit_code = kSuccess;
  std::function<void(std::ostream&)> action;

  auto add_common = [&](CLI::App* sub, bool formats, const std::vector<std::string>& allowed = {"json", "csv"}) {
    sub->add_option("--output,-o", common.output, "Write the report to this file instead of standard output");
    sub->add_option("--workers", common.workers,
                    std::string("Worker threads (default from ") + kWorkersEnv + ", else 1)")
        ->check(CLI::Range(1u, 256u));
    if (formats) sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember(allowed));
  };

  // verify
  std::string spec_path;
  std::string window_text = "1000000";
  std::size_t max_witnesses = 1000;
  {
    auto* sub = app.add_subcommand("verify", "Windowed check that F is the disjoint union of its images");
    sub->add_option("--spec", spec_path, "Fractal spec JSON")->required();
    sub->add_option("--window", window_text, "Norm bound for the generated sample");
    sub->add_option("--max-witnesses", max_witnesses, "Cap on listed overlap and gap witnesses");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = fractal_spec_from_json(read_json_file(spec_path));
        const auto report = verify_self_similar(spec, parse_integer(window_text), max_witnesses);
        emit_json(o, to_json(report));
        if (report.status != VerificationStatus::verified) exit_code = kPropertyViolated;
      };
    });
  }

  // generate
  std::string gen_window = "1000";
  {
    auto* sub = app.add_subcommand("generate", "Orbit closure of the base points within a norm window");
    sub->add_option("--spec", spec_path, "Fractal spec JSON")->required();
    sub->add_option("--window", gen_window, "Norm bound");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = fractal_spec_from_json(read_json_file(spec_path));
        emit_json(o, to_json(generate(spec, parse_integer(gen_window))));
      };
    });
  }

  // member
  std::string element_text;
  std::size_t depth_cap = 4096;
  {
    auto* sub = app.add_subcommand("member", "Decide membership of an element by backward recursion");
    sub->add_option("--spec", spec_path, "Fractal spec JSON (affine maps)")->required();
    sub->add_option("--element", element_text, "Element: an integer, or u,v for quadratic rings")->required();
    sub->add_option("--depth-cap", depth_cap, "Recursion depth cap");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = fractal_spec_from_json(read_json_file(spec_path));
        const auto e = parse_element(spec.ring(), element_text);
        Json j;
        j["element"] = element_to_json(e);
        j["member"] = to_string(member(spec, e, depth_cap));
        emit_json(o, j);
      };
    });
  }

  // dim
  std::string weights_text;
  double tol = kDefaultTolerance;
  std::string dim_format = "text";
  {
    auto* sub = app.add_subcommand("dim", "Solve the box equation sum N_i^(-s/n_i) = 1");
    auto* w = sub->add_option("--weights", weights_text, "Comma list of N or N:n terms");
    auto* s = sub->add_option("--spec", spec_path, "Take weights (norm(a_i), n_i) from a fractal spec");
    w->excludes(s);
    sub->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    add_common(sub, false);
    sub->add_option("--format", dim_format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->callback([&] {
      action = [&](std::ostream& o) {
        std::vector<BoxWeight> weights;
        if (!weights_text.empty()) {
          weights = parse_weights(weights_text);
        } else if (!spec_path.empty()) {
          weights = box_weights(fractal_spec_from_json(read_json_file(spec_path)));
        } else {
          throw InputError("dim needs --weights or --spec");
        }
        const auto result = solve_box_equation(weights, tol);
        if (dim_format == "text") {
          o << format_fixed(result.s, 12) << '\n';
        } else {
          emit_json(o, to_json(result));
        }
      };
    });
  }

  // estimate-dim
  std::string thresholds_text;
  {
    auto* sub = app.add_subcommand("estimate-dim", "Fit the log-log growth slope of exact counts N(F, x)");
    sub->add_option("--spec", spec_path, "Fractal spec JSON")->required();
    sub->add_option("--thresholds", thresholds_text, "Strictly ascending comma list of norm thresholds")->required();
    sub->add_option("--tol", tol, "Tolerance of the analytic box dimension")->check(CLI::PositiveNumber);
    add_common(sub, true);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = fractal_spec_from_json(read_json_file(spec_path));
        const auto thresholds = parse_integer_list(thresholds_text);
        const auto series = count_series(spec, thresholds);
        if (common.format == "csv") {
          write_csv(o, series);
          return;
        }
        Json j;
        j["series"] = to_json(series);
        j["fit"] = to_json(estimate_dimension(series));
        try {
          j["box_dimension"] = box_dimension(spec, tol).s;
        } catch (const InputError&) {
          j["box_dimension"] = nullptr;
        }
        emit_json(o, j);
      };
    });
  }

  // monotone
  std::string spec_b_path;
  std::string mono_window = "1000000";
  {
    auto* sub = app.add_subcommand("monotone", "Check F_a within F_b and dim(F_a) <= dim(F_b)");
    sub->add_option("--spec-a", spec_path, "Smaller fractal spec")->required();
    sub->add_option("--spec-b", spec_b_path, "Larger fractal spec")->required();
    sub->add_option("--window", mono_window, "Norm window for the subset check");
    sub->add_option("--tol", tol, "Dimension tolerance")->check(CLI::PositiveNumber);
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto a = fractal_spec_from_json(read_json_file(spec_path));
        const auto b = fractal_spec_from_json(read_json_file(spec_b_path));
        const auto report = check_monotone(a, b, parse_integer(mono_window), tol);
        emit_json(o, to_json(report));
        if (!report.subset_confirmed || !report.consistent) exit_code = kPropertyViolated;
      };
    });
  }

  // orbit
  std::string hmax_text = "1024";
  {
    auto* sub = app.add_subcommand("orbit", "Orbit of projective base points under polynomial endomorphisms");
    sub->add_option("--spec", spec_path, "Projective spec JSON")->required();
    sub->add_option("--hmax", hmax_text, "Height bound");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = projective_spec_from_json(read_json_file(spec_path));
        const auto pts = orbit_generate(spec.endos, spec.base_points, parse_integer(hmax_text));
        Json points = Json::array();
        for (const auto& p : pts) points.push_back(point_to_json(p));
        emit_json(o, Json{{"h_max", integer_to_json(parse_integer(hmax_text))}, {"count", pts.size()}, {"points", points}});
      };
    });
  }

  // verify-proj
  std::string proj_hmax = "1048576";
  double margin = kDefaultMargin;
  {
    auto* sub = app.add_subcommand("verify-proj", "Windowed disjoint-union check for a projective orbit set");
    sub->add_option("--spec", spec_path, "Projective spec JSON")->required();
    sub->add_option("--hmax", proj_hmax, "Height bound of the orbit");
    sub->add_option("--margin", margin, "Safety divisor on the coverage window")->check(CLI::PositiveNumber);
    sub->add_option("--max-witnesses", max_witnesses, "Cap on listed witnesses");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = projective_spec_from_json(read_json_file(spec_path));
        const auto report =
            verify_projective_self_similar(spec.endos, spec.base_points, parse_integer(proj_hmax), margin, max_witnesses);
        emit_json(o, to_json(report));
        if (report.status != VerificationStatus::verified) exit_code = kPropertyViolated;
      };
    });
  }

  // height-scaling
  std::size_t map_index = 1;
  std::size_t samples = 10000;
  std::int64_t sample_height = 1'000'000;
  std::uint64_t seed = 1;
  {
    auto* sub = app.add_subcommand("height-scaling", "Probe |h(f(P)) - m h(P)| on random points of P^1(Q)");
    sub->add_option("--spec", spec_path, "Projective spec JSON")->required();
    sub->add_option("--map", map_index, "1-based endomorphism index");
    sub->add_option("--samples", samples, "Number of random points")->check(CLI::PositiveNumber);
    sub->add_option("--sample-height", sample_height, "Height bound of the random points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Random seed");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = projective_spec_from_json(read_json_file(spec_path));
        const auto& f = pick_endo(spec, map_index);
        if (f.dimension() != 1) throw InputError("height-scaling samples P^1 only");
        const auto pts = random_p1_points(samples, sample_height, seed);
        Json j = to_json(check_height_scaling(f, pts));
        j["degree"] = f.degree();
        emit_json(o, j);
      };
    });
  }

  // preperiodic
  std::int64_t h_search = 100;
  std::size_t iterations = kDefaultIterationCap;
  std::string h_escape = std::to_string(kDefaultEscapeHeight);
  {
    auto* sub = app.add_subcommand("preperiodic", "Search preperiodic points of bounded height on P^1(Q)");
    sub->add_option("--spec", spec_path, "Projective spec JSON")->required();
    sub->add_option("--map", map_index, "1-based endomorphism index");
    sub->add_option("--h-search", h_search, "Height cap for seeds")->check(CLI::PositiveNumber);
    sub->add_option("--iterations", iterations, "Iteration cap per seed")->check(CLI::PositiveNumber);
    sub->add_option("--h-escape", h_escape, "Height beyond which an orbit counts as escaped");
    add_common(sub, false);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto spec = projective_spec_from_json(read_json_file(spec_path));
        const auto report = find_preperiodic(pick_endo(spec, map_index), h_search, iterations,
                                             parse_integer(h_escape), common.workers);
        emit_json(o, to_json(report));
      };
    });
  }

  // census-pn
  unsigned census_n = 1;
  std::int64_t census_x = 100;
  unsigned steps = 3;
  std::uint64_t budget = kDefaultWorkBudget;
  {
    auto* sub = app.add_subcommand("census-pn", "Exact counts on P^n(Q) against the Schanuel main term");
    sub->add_option("--n", census_n, "Projective dimension")->check(CLI::PositiveNumber);
    sub->add_option("--x", census_x, "Largest height bound")->check(CLI::PositiveNumber);
    sub->add_option("--steps", steps, "Rows at x/2^k for k = steps-1 .. 0")->check(CLI::Range(1u, 62u));
    sub->add_option("--budget", budget, "Maximum tuple evaluations");
    add_common(sub, true);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto hist = count_pn_q_by_height(census_n, census_x, budget, common.workers);
        const double constant = schanuel_constant(rational_schanuel_inputs(census_n));
        std::vector<std::int64_t> xs;
        for (unsigned k = steps; k-- > 0;) {
          const std::int64_t t = census_x >> k;
          if (t >= 1 && (xs.empty() || xs.back() != t)) xs.push_back(t);
        }
        std::vector<Observation> obs;
        std::uint64_t cumulative = 0;
        std::size_t h = 0;
        for (const auto t : xs) {
          for (; h <= static_cast<std::size_t>(t); ++h) cumulative += hist[h];
          obs.push_back({t, static_cast<double>(t), cumulative});
        }
        if (obs.size() < 2) throw InputError("census-pn needs at least two distinct thresholds; raise --x or --steps");
        const auto cmp = compare(obs, PowerLaw{constant, static_cast<double>(census_n + 1)});
        if (common.format == "csv") {
          write_csv(o, cmp);
          return;
        }
        emit_json(o, Json{{"n", census_n}, {"x", census_x}, {"constant", constant}, {"comparison", to_json(cmp)}});
      };
    });
  }

  // census-ffield
  std::uint32_t q = 2;
  unsigned ff_d = 6;
  {
    auto* sub = app.add_subcommand("census-ffield", "Exact counts on P^n(F_q(t)) against the Serre-Wan main term");
    sub->add_option("--q", q, "Prime field size")->check(CLI::Range(2u, 65521u));
    sub->add_option("--n", census_n, "Projective dimension")->check(CLI::PositiveNumber);
    sub->add_option("--d", ff_d, "Largest logarithmic height");
    sub->add_option("--budget", budget, "Maximum tuple evaluations");
    add_common(sub, true);
    sub->callback([&] {
      action = [&](std::ostream& o) {
        const auto hist = count_pn_ffield_by_height({q, census_n, ff_d}, budget, common.workers);
        const auto constant_exact = serre_wan_constant_exact(q, census_n);
        const double constant = to_double(constant_exact);
        std::vector<Observation> obs;
        for (unsigned d = 0; d <= ff_d; ++d) obs.push_back({d, std::pow(static_cast<double>(q), d), hist[d]});
        const auto cmp = compare(obs, PowerLaw{constant, static_cast<double>(census_n + 1)});
        if (common.format == "csv") {
          write_csv(o, cmp);
          return;
        }
        emit_json(o, Json{{"q", q},
                          {"n", census_n},
                          {"d", ff_d},
                          {"constant", constant},
                          {"constant_exact", to_string(constant_exact)},
                          {"comparison", to_json(cmp)}});
      };
    });
  }

  auto report_error = [&](const char* kind, const std::string& message, Json extra = Json::object()) {
    Json j{{"error", kind}, {"message", message}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    err << j.dump() << '\n';
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kUsageError;
  }

  try {
    if (!action) throw InputError("no subcommand selected");
    if (common.output.empty()) {
      action(out);
    } else {
      std::ofstream file(common.output);
      if (!file) throw InputError("cannot write " + common.output);
      action(file);
    }
  } catch (const BudgetExceeded& e) {
    report_error("budget_exceeded", e.what());
    return kBudgetExceeded;
  } catch (const IndeterminacyError& e) {
    report_error("indeterminacy", e.what(), Json{{"point", e.point()}});
    return kUsageError;
  } catch (const InputError& e) {
    report_error("input", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kUsageError;
  }
  return exit_code;
}

}  // namespace arithfrac::cli
