// Copyright 2026 The tangle3 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tangle3/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "tangle3/ckw.hpp"
#include "tangle3/cli/io.hpp"
#include "tangle3/convexroof.hpp"
#include "tangle3/families.hpp"
#include "tangle3/linalg.hpp"
#include "tangle3/tangle.hpp"

namespace tangle3::cli {
namespace {

using nlohmann::json;

struct RoofFlags {
  int ensemble_size = 0;
  int restarts = RoofConfig{}.restarts;
  int max_iters = RoofConfig{}.max_iters;
  double step_init = RoofConfig{}.step_init;
  double step_min = RoofConfig{}.step_min;
  int patience = RoofConfig{}.patience;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App* app) {
    app->add_option("--m", ensemble_size, "Ensemble size (0 selects 2 x rank)");
    app->add_option("--restarts", restarts, "Independent restarts");
    app->add_option("--iters", max_iters, "Maximum moves per restart");
    app->add_option("--step-init", step_init, "Initial mixing angle (radians)");
    app->add_option("--step-min", step_min, "Smallest mixing angle (radians)");
    app->add_option("--patience", patience, "Rejections before the step halves");
    app->add_option("--threads", threads, "Worker threads (0 = hardware); results do not depend on it");
    app->add_option("--seed", seed, "Seed for the random restarts");
  }

  RoofConfig config() const {
    RoofConfig cfg;
    cfg.ensemble_size = ensemble_size;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.step_init = step_init;
    cfg.step_min = step_min;
    cfg.patience = patience;
    cfg.threads = threads;
    cfg.seed = seed.value_or(0);
    return cfg;
  }

  // Threads are left out on purpose: they never change the output.
  json parameters() const {
    return {{"m", ensemble_size},          {"restarts", restarts},   {"iters", max_iters},
            {"step_init", step_init},      {"step_min", step_min},   {"patience", patience}};
  }
};

const FamilySpec& parse_family(const std::string& name, bool allow_rank4) {
  const auto id = parse_family_id(name);
  if (!id) throw UsageError("unknown family \"" + name + "\" (expected rank4 ... rank8)");
  if (!allow_rank4 && *id == FamilyId::kRank4) {
    throw UsageError("rank4 has no tangle curve beyond its zero region; use rank5 ... rank8");
  }
  return family(*id);
}

std::vector<double> grid_points(int n) {
  if (n < 2) throw UsageError("--grid needs at least 2 points");
  return uniform_grid(static_cast<std::size_t>(n));
}

json ensemble_json(const Ensemble& e) {
  json members = json::array();
  for (const auto& m : e) {
    members.push_back({{"weight", m.weight},
                       {"amplitudes", complex_array(m.state.amplitudes)},
                       {"tau3", tangle_polynomial(m.state.amplitudes) / std::pow(m.state.norm_squared(), 2)}});
  }
  return members;
}

double reconstruction_residual(const Ensemble& e, const DensityMatrix& rho) {
  return max_abs(density_from_ensemble(e).entries() - rho.entries());
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
  Output sink(path, out);
  sink.stream() << j.dump(2) << "\n";
}

std::string default_envelope_path(const std::string& out) {
  if (out == "-") return "envelope.csv";
  return (std::filesystem::path(out).parent_path() / "envelope.csv").string();
}

// ---------------------------------------------------------------- commands

struct PureCmd {
  std::string input;
  std::string out = "-";

  int run(std::ostream& out_stream, std::ostream& err) const {
    const PureState psi = parse_pure_state(load_json(input));
    const DCoefficients d = d_coefficients(psi);
    Output sink(out, out_stream);
    auto& os = sink.stream();
    os << fmt::format("{:.12f}\n", three_tangle_pure(psi));
    for (const auto& [name, v] : {std::pair{"d1", d.d1}, {"d2", d.d2}, {"d3", d.d3}}) {
      os << name << ' ' << format_number(v.real()) << ' ' << format_number(v.imag()) << '\n';
    }
    write_sidecar({"pure", {{"input", input}}, std::nullopt}, out, err);
    return kExitOk;
  }
};

struct SweepCmd {
  std::string family_name;
  int grid = 1001;
  std::string out = "-";

  int run(std::ostream& out_stream, std::ostream& err) const {
    const FamilySpec& f = parse_family(family_name, false);
    const auto xs = grid_points(grid);
    const PiecewiseTangleCurve& curve = tangle_curve(f.id);
    {
      Output sink(out, out_stream);
      auto& os = sink.stream();
      os << "x,tau3,region,gI,gII\n";
      for (double x : xs) {
        os << format_number(x) << ',' << format_number(curve(x)) << ',' << to_string(curve.region(x))
           << ',' << format_number(curve.g_one(x)) << ',' << format_number(curve.g_two(x)) << '\n';
      }
    }
    write_sidecar({"sweep", {{"family", family_name}, {"grid", grid}}, std::nullopt}, out, err);
    std::ostream& info = out == "-" ? err : out_stream;
    info << "x0 " << format_number(curve.x0) << "\nx1 " << format_number(curve.x1) << "\nxstar "
         << format_number(curve.xstar) << '\n';
    return kExitOk;
  }
};

struct CurvesCmd {
  std::string family_name;
  double phase_step = -1.0;
  int grid = 200;
  std::string out;
  std::string envelope;
  std::size_t max_curves = kDefaultCurveCap;
  bool envelope_only = false;

  int run(std::ostream& out_stream, std::ostream& err) const {
    const FamilySpec& f = parse_family(family_name, false);
    const double step = phase_step > 0.0 ? phase_step : default_phase_step(f.id);
    const auto xs = grid_points(grid);
    if (!envelope_only && out.empty()) throw UsageError("--out is required unless --envelope-only");
    const std::string envelope_path = envelope.empty() ? default_envelope_path(out.empty() ? "-" : out)
                                                       : envelope;

    std::vector<double> minimum(xs.size(), std::numeric_limits<double>::infinity());
    std::optional<Output> sink;
    if (!envelope_only) {
      // Fail on the lattice cap before creating any file.
      const std::size_t count = curve_count(f, step);
      if (count > max_curves) {
        throw Error(ErrorKind::kTooManyCurves,
                    fmt::format("{} at phase step {} needs {} curves; cap is {} (raise --max-curves)",
                                family_name, step, count, max_curves));
      }
      sink.emplace(out, out_stream);
      auto& os = sink->stream();
      os << "curve_id";
      for (std::size_t j = 1; j <= f.phase_count(); ++j) os << ",phi" << j;
      os << ",x,tau3\n";
    }
    std::size_t curve_id = 0;
    std::string prefix;
    for_each_characteristic_curve(
        f, step, xs,
        [&](std::span<const double> phases, std::span<const double> values) {
          for (std::size_t i = 0; i < values.size(); ++i) minimum[i] = std::min(minimum[i], values[i]);
          if (sink) {
            prefix = std::to_string(curve_id);
            for (double p : phases) prefix += ',' + format_number(p);
            auto& os = sink->stream();
            for (std::size_t i = 0; i < values.size(); ++i) {
              os << prefix << ',' << format_number(xs[i]) << ',' << format_number(values[i]) << '\n';
            }
          }
          ++curve_id;
        },
        max_curves);
    sink.reset();

    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < xs.size(); ++i) points.emplace_back(xs[i], minimum[i]);
    const PiecewiseLinear env = lower_convex_envelope(std::move(points));
    double max_diff = 0.0;
    {
      Output env_sink(envelope_path, out_stream);
      auto& os = env_sink.stream();
      os << "x,envelope,analytic,abs_diff\n";
      for (double x : xs) {
        const double e = env(x), a = tau3_family(f, x), diff = std::abs(e - a);
        max_diff = std::max(max_diff, diff);
        os << format_number(x) << ',' << format_number(e) << ',' << format_number(a) << ','
           << format_number(diff) << '\n';
      }
    }
    const Manifest manifest{"curves",
                            {{"family", family_name},
                             {"phase_step", step},
                             {"grid", grid},
                             {"max_curves", max_curves},
                             {"envelope_only", envelope_only}},
                            std::nullopt};
    if (!envelope_only) write_sidecar(manifest, out, err);
    write_sidecar(manifest, envelope_path, err);
    const bool stdout_used = envelope_path == "-" || (!envelope_only && out == "-");
    std::ostream& info = stdout_used ? err : out_stream;
    info << "curves " << curve_id << "\nmax_abs_diff " << format_number(max_diff) << '\n';
    return kExitOk;
  }
};

struct OptimizeCmd {
  std::string input;
  std::string out = "-";
  RoofFlags roof;

  int run(std::ostream& out_stream, std::ostream&) const {
    const DensityMatrix rho = parse_density_matrix(load_json(input));
    const RoofResult r = estimate_roof(rho, roof.config());
    json trace = json::array();
    for (const auto& s : r.restarts) {
      trace.push_back({{"restart", s.restart},
                       {"initial", s.initial},
                       {"final", s.final},
                       {"iterations", s.iterations},
                       {"accepted", s.accepted}});
    }
    json params = roof.parameters();
    params["input"] = input;
    const json result = {
        {"value", r.value},
        {"best_restart", r.best_restart},
        {"ensemble_size", r.ensemble_size},
        {"witness", ensemble_json(r.witness)},
        {"residual", reconstruction_residual(r.witness, rho)},
        {"trace", trace},
        {"manifest", Manifest{"optimize", params, roof.seed}.to_json()},
    };
    write_json(result, out, out_stream);
    return kExitOk;
  }
};

struct CkwCmd {
  std::string family_name;
  int grid = 200;
  std::string out = "-";
  bool extended = false;
  RoofFlags roof;

  int run(std::ostream& out_stream, std::ostream& err) const {
    const FamilySpec& f = parse_family(family_name, false);
    if (f.id != FamilyId::kRank5 && !roof.seed) {
      throw UsageError(family_name + " uses the randomized one-tangle estimator; --seed is required");
    }
    const auto xs = grid_points(grid);
    const auto rows = ckw_report(f, xs, roof.config());
    {
      Output sink(out, out_stream);
      auto& os = sink.stream();
      os << "x,one_tangle,c2_sum,tau3,inequality_ok,strong_ok";
      if (extended) os << ",one_tangle_direct,estimated";
      os << '\n';
      for (const auto& r : rows) {
        os << format_number(r.x) << ',' << format_number(r.one_tangle_closed) << ','
           << format_number(r.c2_ab + r.c2_ac) << ',' << format_number(r.tau3) << ','
           << format_bool(r.inequality_ok) << ',' << format_bool(r.strong_ok);
        if (extended) os << ',' << format_number(r.one_tangle_direct) << ',' << format_bool(r.estimated);
        os << '\n';
      }
    }
    json params = {{"family", family_name}, {"grid", grid}, {"extended", extended}};
    std::optional<std::uint64_t> seed;
    if (f.id != FamilyId::kRank5) {
      params["roof"] = roof.parameters();
      seed = roof.seed;
    }
    write_sidecar({"ckw", params, seed}, out, err);
    return kExitOk;
  }
};

struct DecomposeCmd {
  std::string family_name;
  double x = 0.0;
  std::string out = "-";

  int run(std::ostream& out_stream, std::ostream&) const {
    const FamilySpec& f = parse_family(family_name, true);
    const Ensemble e = optimal_decomposition(f, x);
    const DensityMatrix rho = family_state(f, x);
    json result = {
        {"family", family_name},
        {"x", x},
        {"members", ensemble_json(e)},
        {"residual", reconstruction_residual(e, rho)},
        {"average_tangle", average_tangle(e)},
        {"tau3_family", tau3_family(f, x)},
    };
    if (f.id != FamilyId::kRank4) result["region"] = to_string(tangle_curve(f.id).region(x));
    result["manifest"] = Manifest{"decompose", {{"family", family_name}, {"x", x}}, std::nullopt}.to_json();
    write_json(result, out, out_stream);
    return kExitOk;
  }
};

struct ConstantsCmd {
  std::string out = "-";

  int run(std::ostream& out_stream, std::ostream& err) const {
    struct Row {
      FamilyId id;
      const char* name;
      std::optional<double> published;
      double computed;
    };
    std::vector<Row> rows;
    const FamilySpec& f4 = family(FamilyId::kRank4);
    rows.push_back({FamilyId::kRank4, "x0", (2.0 - std::sqrt(3.0)) / 2.0, find_x0(f4)});
    const std::array<std::array<std::optional<double>, 3>, 4> published = {{
        {0.7377, 0.9559, 0.9750},
        {0.2143, 0.8290, std::nullopt},
        {0.2062, 0.8375, std::nullopt},
        {0.2490, 0.8649, std::nullopt},
    }};
    for (std::size_t i = 0; i < 4; ++i) {
      const FamilyId id = static_cast<FamilyId>(i + 1);
      const PiecewiseTangleCurve& c = tangle_curve(id);
      rows.push_back({id, "x0", published[i][0], c.x0});
      rows.push_back({id, "x1", published[i][1], c.x1});
      rows.push_back({id, "xstar", published[i][2], c.xstar});
    }
    {
      Output sink(out, out_stream);
      auto& os = sink.stream();
      os << "family,constant,published,computed,abs_diff\n";
      for (const auto& r : rows) {
        os << family_name(r.id) << ',' << r.name << ',';
        if (r.published) os << format_number(*r.published);
        os << ',' << format_number(r.computed) << ',';
        if (r.published) os << format_number(std::abs(r.computed - *r.published));
        os << '\n';
      }
    }
    write_sidecar({"constants", json::object(), std::nullopt}, out, err);
    return kExitOk;
  }
};

struct StateCmd {
  std::string family_name;
  double x = 0.0;
  std::vector<double> phases;
  std::string out = "-";

  int run(std::ostream& out_stream, std::ostream&) const {
    const FamilySpec& f = parse_family(family_name, true);
    json result = phases.empty() ? to_json(family_state(f, x))
                                 : to_json(z_state({f.id, x, phases}));
    write_json(result, out, out_stream);
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-tangle toolkit for three-qubit states", "tangle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  PureCmd pure;
  auto* pure_app = app.add_subcommand("pure", "Three-tangle and d-coefficients of a pure state");
  pure_app->add_option("input", pure.input, "PureState JSON file")->required();
  pure_app->add_option("--out", pure.out, "Output path, - for stdout");

  SweepCmd sweep;
  auto* sweep_app = app.add_subcommand("sweep", "Piecewise analytic tangle curve of a family");
  sweep_app->add_option("--family", sweep.family_name, "rank5 ... rank8")->required();
  sweep_app->add_option("--grid", sweep.grid, "Points including 0 and 1");
  sweep_app->add_option("--out", sweep.out, "CSV path, - for stdout");

  CurvesCmd curves;
  auto* curves_app = app.add_subcommand("curves", "Characteristic curves and their lower convex envelope");
  curves_app->add_option("--family", curves.family_name, "rank5 ... rank8")->required();
  curves_app->add_option("--phase-step", curves.phase_step,
                         "Phase lattice spacing (default 0.3 for rank5, pi/2 otherwise)");
  curves_app->add_option("--grid", curves.grid, "Points including 0 and 1");
  curves_app->add_option("--out", curves.out, "Long-format curve CSV, - for stdout");
  curves_app->add_option("--envelope", curves.envelope, "Envelope CSV (default envelope.csv next to --out)");
  curves_app->add_option("--max-curves", curves.max_curves, "Lattice size cap");
  curves_app->add_flag("--envelope-only", curves.envelope_only, "Skip the long-format curve file");

  OptimizeCmd optimize;
  auto* optimize_app = app.add_subcommand("optimize", "Numerical convex-roof estimate of the three-tangle");
  optimize_app->add_option("input", optimize.input, "DensityMatrix JSON file")->required();
  optimize_app->add_option("--out", optimize.out, "JSON path, - for stdout");
  optimize.roof.add_to(optimize_app);

  CkwCmd ckw;
  auto* ckw_app = app.add_subcommand("ckw", "CKW monogamy report over a family");
  ckw_app->add_option("--family", ckw.family_name, "rank5 ... rank8")->required();
  ckw_app->add_option("--grid", ckw.grid, "Points including 0 and 1");
  ckw_app->add_option("--out", ckw.out, "CSV path, - for stdout");
  ckw_app->add_flag("--extended", ckw.extended, "Append one_tangle_direct and estimated columns");
  ckw.roof.add_to(ckw_app);

  DecomposeCmd decompose;
  auto* decompose_app = app.add_subcommand("decompose", "Optimal pure-state decomposition of a family state");
  decompose_app->add_option("--family", decompose.family_name, "rank4 ... rank8")->required();
  decompose_app->add_option("--x", decompose.x, "Mixing parameter in [0,1]")->required();
  decompose_app->add_option("--out", decompose.out, "JSON path, - for stdout");

  ConstantsCmd constants;
  auto* constants_app = app.add_subcommand("constants", "Published versus computed transition constants");
  constants_app->add_option("--out", constants.out, "CSV path, - for stdout");

  StateCmd state;
  auto* state_app = app.add_subcommand("state", "Write a family density matrix or Z-state as JSON");
  state_app->add_option("--family", state.family_name, "rank4 ... rank8")->required();
  state_app->add_option("--x", state.x, "Mixing parameter in [0,1]")->required();
  state_app->add_option("--phases", state.phases, "Z-state phases; omit for the mixed state");
  state_app->add_option("--out", state.out, "JSON path, - for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pure_app->parsed()) return pure.run(out, err);
    if (sweep_app->parsed()) return sweep.run(out, err);
    if (curves_app->parsed()) return curves.run(out, err);
    if (optimize_app->parsed()) {
      if (!optimize.roof.seed) throw UsageError("optimize is randomized; --seed is required");
      return optimize.run(out, err);
    }
    if (ckw_app->parsed()) return ckw.run(out, err);
    if (decompose_app->parsed()) return decompose.run(out, err);
    if (constants_app->parsed()) return constants.run(out, err);
    if (state_app->parsed()) return state.run(out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace tangle3::cli
