// Copyright 2026 The wavesearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wavesearch/error.hpp"
#include "wavesearch/grover.hpp"
#include "wavesearch/lattice.hpp"
#include "wavesearch/spatial.hpp"
#include "wavesearch/statevec.hpp"
#include "wavesearch/version.hpp"
#include "wavesearch/wavemech.hpp"

namespace wavesearch::experiment {

using nlohmann::json;

// Every tunable of every experiment. Fields irrelevant to the chosen
// experiment are carried along untouched.
struct ExperimentConfig {
  std::string experiment = "grover";
  std::string mode;  // empty selects the experiment's default mode
  std::uint64_t n = 4;
  std::vector<std::uint64_t> targets{0};
  double oracle_phase = kPi;
  double diffusion_phase = kPi;
  std::uint64_t steps = 1;
  std::optional<double> threshold;
  double energy = 1.0;
  std::uint64_t length = 2000;
  double hopping = 1.0;
  double impurity = 1.0;
  double disorder = 1.0;
  std::uint64_t trials = 50;
  std::string boundary = "open";
  std::string dims = "16x16";
  double gamma = 0.0;  // 0 selects 1/N
  double time = 0.0;   // 0 selects pi sqrt(N/M), one full oscillation
  double dt = 0.0;     // 0 selects 0.05/sqrt(N)
  std::int64_t q = 1;
  std::uint64_t seed = 0;
  std::uint64_t threads = 1;
  std::string out;
  std::string format = "csv";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "experiment", "mode",     "n",       "targets", "oracle_phase", "diffusion_phase",
      "steps",      "threshold", "energy", "length",  "hopping",      "impurity",
      "disorder",   "trials",   "boundary", "dims",   "gamma",        "time",
      "dt",         "q",        "seed",    "threads", "out",          "format"};
  return keys;
}

inline json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["mode"] = c.mode;
  j["n"] = c.n;
  j["targets"] = c.targets;
  j["oracle_phase"] = c.oracle_phase;
  j["diffusion_phase"] = c.diffusion_phase;
  j["steps"] = c.steps;
  j["threshold"] = c.threshold ? json(*c.threshold) : json(nullptr);
  j["energy"] = c.energy;
  j["length"] = c.length;
  j["hopping"] = c.hopping;
  j["impurity"] = c.impurity;
  j["disorder"] = c.disorder;
  j["trials"] = c.trials;
  j["boundary"] = c.boundary;
  j["dims"] = c.dims;
  j["gamma"] = c.gamma;
  j["time"] = c.time;
  j["dt"] = c.dt;
  j["q"] = c.q;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

// Overlays the fields present in j onto base. Unknown keys and ill-typed
// values are rejected.
inline ExperimentConfig apply_json(ExperimentConfig base, const json& j) {
  detail::require(j.is_object(), ErrorCode::kConfig, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    detail::require(config_keys().count(key) == 1, ErrorCode::kConfig,
                    "unknown config field '" + key + "'");
  }
  try {
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    take("experiment", base.experiment);
    take("mode", base.mode);
    take("n", base.n);
    take("targets", base.targets);
    take("oracle_phase", base.oracle_phase);
    take("diffusion_phase", base.diffusion_phase);
    take("steps", base.steps);
    if (j.contains("threshold")) {
      base.threshold = j.at("threshold").is_null()
                           ? std::nullopt
                           : std::optional<double>(j.at("threshold").get<double>());
    }
    take("energy", base.energy);
    take("length", base.length);
    take("hopping", base.hopping);
    take("impurity", base.impurity);
    take("disorder", base.disorder);
    take("trials", base.trials);
    take("boundary", base.boundary);
    take("dims", base.dims);
    take("gamma", base.gamma);
    take("time", base.time);
    take("dt", base.dt);
    take("q", base.q);
    take("seed", base.seed);
    take("threads", base.threads);
    take("out", base.out);
    take("format", base.format);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("bad config value: ") + e.what());
  }
  return base;
}

inline ExperimentConfig from_json(const json& j) { return apply_json(ExperimentConfig{}, j); }

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), ErrorCode::kIo, "cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return apply_json(std::move(base), j);
}

// A table of numbers: one CSV file (or JSON array) per series.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::vector<Series> series;
  json summary = json::object();
  std::string version = kVersion;
  double wall_clock_seconds = 0.0;
};

// 17 significant digits: every double survives a text round trip.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Rounding to three significant digits (10.4721 -> 10.5).
inline double round_to_3_significant(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return std::strtod(buf, nullptr);
}

inline std::string to_csv(const Series& s) {
  std::string out;
  for (std::size_t i = 0; i < s.columns.size(); ++i) {
    if (i) out += ',';
    out += s.columns[i];
  }
  out += '\n';
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline json to_json(const Series& s) {
  json rows = json::array();
  for (const auto& row : s.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[s.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return json{{"name", s.name}, {"columns", s.columns}, {"rows", std::move(rows)}};
}

inline json summary_json(const ExperimentRecord& r) {
  return json{{"config", to_json(r.config)},
              {"summary", r.summary},
              {"series", [&] {
                 json names = json::array();
                 for (const auto& s : r.series) names.push_back(s.name);
                 return names;
               }()},
              {"version", r.version},
              {"wall_clock_seconds", r.wall_clock_seconds}};
}

namespace detail_run {

inline std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

inline std::pair<std::size_t, std::size_t> parse_dims(const std::string& dims) {
  std::size_t w = 0, h = 0;
  char x = 0;
  std::istringstream in(dims);
  if (in >> w) {
    if (in >> x) {
      detail::require((x == 'x' || x == 'X') && static_cast<bool>(in >> h) && in.eof(),
                      ErrorCode::kConfig, "dims must look like 16 or 16x16");
      return {w, h};
    }
    return {w, 0};
  }
  throw Error(ErrorCode::kConfig, "dims must look like 16 or 16x16");
}

inline Series grover_series(const grover::Trajectory& t) {
  Series s{"trajectory", {"step", "success_probability"}, {}};
  for (const auto& p : t.points) {
    s.rows.push_back({static_cast<double>(p.step), p.success_probability});
  }
  return s;
}

inline Series energy_series(const wave::EnergyTrajectory& t) {
  Series s{"energy", {"step", "energy_fraction"}, {}};
  for (const auto& p : t.points) s.rows.push_back({static_cast<double>(p.step), p.energy_fraction});
  return s;
}

inline Series walk_series(const spatial::WalkTrajectory& t, const char* axis) {
  Series s{"trajectory", {axis, "probability"}, {}};
  for (const auto& p : t.points) s.rows.push_back({p.time, p.probability});
  return s;
}

inline void run_grover(ExperimentRecord& r) {
  const ExperimentConfig& c = r.config;
  const std::string mode = c.mode.empty() ? (c.threshold ? "threshold" : "run") : c.mode;
  if (mode == "phase-sweep") {
    const std::vector<double> phases{kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
    Series s{"phase_sweep",
             {"phase", "matched_peak", "matched_step", "mismatched_peak", "mismatched_step"},
             {}};
    for (const auto& row : grover::phase_sweep(c.n, phases)) {
      s.rows.push_back({row.phase, row.matched.probability,
                        static_cast<double>(row.matched.step), row.mismatched.probability,
                        static_cast<double>(row.mismatched.step)});
    }
    r.summary["budget"] = grover::optimal_queries(c.n, 1);
    r.series.push_back(std::move(s));
    return;
  }
  const grover::SearchSpec spec(c.n, to_sizes(c.targets), c.oracle_phase, c.diffusion_phase);
  grover::Trajectory t = [&] {
    if (mode == "run") return grover::run(spec, c.steps);
    if (mode == "threshold") {
      detail::require(c.threshold.has_value(), ErrorCode::kConfig,
                      "threshold mode needs --threshold");
      return grover::run_until_threshold(spec, *c.threshold);
    }
    throw Error(ErrorCode::kConfig, "unknown grover mode '" + mode + "'");
  }();
  const grover::Peak peak = grover::peak_success(t);
  const grover::TwoDModel model =
      grover::two_d_model(std::sqrt(static_cast<double>(spec.target_count()) /
                                    static_cast<double>(spec.n())));
  r.summary["mode"] = mode;
  r.summary["stop_reason"] = std::string(grover::to_string(t.stop));
  r.summary["final_step"] = t.points.back().step;
  r.summary["final_probability"] = t.final_probability();
  r.summary["peak_probability"] = peak.probability;
  r.summary["peak_step"] = peak.step;
  r.summary["optimal_Q"] = model.optimal_q;
  r.summary["theta"] = model.theta;
  r.summary["rotation_per_iteration"] = model.rotation_per_iteration;
  r.series.push_back(grover_series(t));
}

inline void run_wave(ExperimentRecord& r) {
  const ExperimentConfig& c = r.config;
  const std::string mode = c.mode.empty() ? "focus" : c.mode;
  detail::require(!c.targets.empty(), ErrorCode::kConfig, "wave needs one target mode");
  const std::size_t target = c.targets.front();
  if (mode == "resources") {
    const wave::ResourceReport rep = wave::resource_report(c.n);
    r.summary = json{{"wave_modes", rep.wave_modes},
                     {"qubits", rep.qubits},
                     {"queries_classical", rep.queries_classical},
                     {"boolean_queries", rep.boolean_queries},
                     {"boolean_bits", rep.boolean_bits},
                     {"membership_queries", rep.membership_queries}};
    return;
  }
  wave::EnergyTrajectory t = [&] {
    if (mode == "focus") {
      const wave::FocusMode focus = c.threshold ? wave::FocusMode{wave::Threshold{*c.threshold}}
                                                : wave::FocusMode{wave::FixedSteps{c.steps}};
      return wave::run_focus(c.n, target, focus, c.energy);
    }
    if (mode == "disperse") {
      // Focus for the optimal number of steps, then run the inverse map.
      const std::size_t q = grover::optimal_queries(c.n, 1);
      r.summary["focus_steps"] = q;
      const wave::EnergyTrajectory focused =
          wave::run_focus(c.n, target, wave::FixedSteps{q}, c.energy);
      return wave::run_disperse(focused.final_bank, target, c.steps);
    }
    throw Error(ErrorCode::kConfig, "unknown wave mode '" + mode + "'");
  }();
  r.summary["mode"] = mode;
  r.summary["stop_reason"] = std::string(grover::to_string(t.stop));
  r.summary["final_energy_fraction"] = t.points.back().energy_fraction;
  r.summary["total_energy"] = t.final_bank.total_energy();
  r.summary["energy_drift"] =
      std::abs(t.final_bank.measured_energy() - t.final_bank.total_energy()) /
      t.final_bank.total_energy();
  r.series.push_back(energy_series(t));
}

inline void run_lattice(ExperimentRecord& r) {
  const ExperimentConfig& c = r.config;
  const std::string mode = c.mode.empty() ? "bound" : c.mode;
  r.summary["mode"] = mode;
  if (mode == "spectrum") {
    detail::require(c.boundary == "open" || c.boundary == "periodic", ErrorCode::kConfig,
                    "boundary must be open or periodic");
    std::vector<double> on_site(c.length, 0.0);
    if (c.impurity != 0.0 && c.length > 0) on_site[c.length / 2] = -c.impurity;
    const lattice::TightBindingSpec spec = lattice::build_chain(
        c.length, c.hopping, std::move(on_site),
        c.boundary == "open" ? lattice::Boundary::kOpen : lattice::Boundary::kPeriodic);
    const lattice::SpectrumResult s = lattice::spectrum(spec);
    Series series{"spectrum", {"index", "eigenvalue", "ipr"}, {}};
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
      series.rows.push_back({static_cast<double>(j), s.eigenvalues(j),
                             lattice::ipr(s.eigenvectors.col(j))});
    }
    r.summary["band_min"] = s.band_min;
    r.summary["band_max"] = s.band_max;
    r.summary["max_residual"] = s.max_residual;
    r.series.push_back(std::move(series));
  } else if (mode == "bound") {
    const lattice::BoundState b = lattice::bound_state(c.length, c.hopping, c.impurity);
    r.summary["energy"] = b.energy;
    r.summary["analytic_energy"] =
        (c.impurity > 0 ? -1.0 : 1.0) * std::sqrt(4 * c.hopping * c.hopping + c.impurity * c.impurity);
    r.summary["gap_outside_band"] = b.gap_outside_band;
    r.summary["ipr"] = b.ipr;
    r.summary["median_band_ipr"] = b.median_band_ipr;
    r.summary["site"] = b.site;
  } else if (mode == "disorder") {
    const lattice::DisorderStats d = lattice::disorder_ensemble(
        c.length, c.hopping, c.disorder, c.trials, c.seed,
        static_cast<unsigned>(std::max<std::uint64_t>(1, c.threads)));
    Series series{"disorder", {"trial", "ipr"}, {}};
    for (std::size_t k = 0; k < d.trial_ipr.size(); ++k) {
      series.rows.push_back({static_cast<double>(k), d.trial_ipr[k]});
    }
    r.summary["mean_ipr"] = d.mean_ipr;
    r.summary["std_ipr"] = d.std_ipr;
    r.series.push_back(std::move(series));
  } else {
    throw Error(ErrorCode::kConfig, "unknown lattice mode '" + mode + "'");
  }
}

inline void run_spatial(ExperimentRecord& r) {
  const ExperimentConfig& c = r.config;
  const std::string mode = c.mode.empty() ? "ctqw" : c.mode;
  r.summary["mode"] = mode;
  const auto targets = to_sizes(c.targets);
  if (mode == "ctqw") {
    const double nn = static_cast<double>(c.n);
    const double m = static_cast<double>(targets.size());
    const double gamma = c.gamma > 0.0 ? c.gamma : 1.0 / nn;
    const double total = c.time > 0.0 ? c.time : kPi * std::sqrt(nn / m);
    const double dt = c.dt > 0.0 ? c.dt : 0.05 / std::sqrt(nn);
    const spatial::WalkTrajectory t =
        spatial::ctqw_search(spatial::Graph::complete(c.n), gamma, targets, total, dt);
    const spatial::TwoLevelReduction reduced(c.n, targets.size(), gamma);
    const spatial::SeriesPoint peak = t.peak();
    r.summary["gamma"] = gamma;
    r.summary["peak_probability"] = peak.probability;
    r.summary["peak_time"] = peak.time;
    r.summary["analytic_peak_time"] = reduced.peak_time();
    r.summary["analytic_peak_probability"] = reduced.probability(reduced.peak_time());
    r.summary["renormalizations"] = t.renormalizations;
    r.summary["max_norm_drift"] = t.max_norm_drift;
    r.series.push_back(walk_series(t, "time"));
  } else if (mode == "dtqw") {
    const auto [w, h] = parse_dims(c.dims);
    const spatial::Graph g = h == 0 ? spatial::Graph::torus1d(w) : spatial::Graph::torus2d(w, h);
    const spatial::WalkTrajectory t = spatial::dtqw_search(g, targets, c.steps);
    const spatial::SeriesPoint peak = t.peak();
    r.summary["vertices"] = g.vertex_count();
    r.summary["peak_probability"] = peak.probability;
    r.summary["peak_step"] = peak.time;
    r.summary["max_norm_drift"] = t.max_norm_drift;
    r.series.push_back(walk_series(t, "step"));
  } else if (mode == "revival") {
    const spatial::RevivalResult rev =
        spatial::multi_target_revival(spatial::Graph::complete(c.n), targets, c.steps);
    r.summary["first_peak_step"] = rev.first_peak_step;
    r.summary["first_peak"] = rev.first_peak;
    r.summary["second_peak_step"] = rev.second_peak_step;
    r.summary["second_peak"] = rev.second_peak;
    r.summary["period_estimate"] = rev.period_estimate;
    r.summary["predicted_period"] = rev.predicted_period;
    r.summary["revival_ratio"] = rev.revival_ratio;
    r.summary["revived"] = rev.revived;
    r.series.push_back(grover_series(rev.trajectory));
  } else {
    throw Error(ErrorCode::kConfig, "unknown spatial mode '" + mode + "'");
  }
}

}  // namespace detail_run

// Query count vs database size for Q = 1, 2, 3: exact N, three-digit
// rounding and the binary-search comparator 2^Q.
inline Series query_table_series() {
  Series s{"query_table", {"Q", "N_exact", "N_rounded", "boolean_N"}, {}};
  for (std::int64_t q = 1; q <= 3; ++q) {
    const double n = grover::database_size_for_queries(q);
    s.rows.push_back({static_cast<double>(q), n, round_to_3_significant(n),
                      static_cast<double>(grover::boolean_search_size(q))});
  }
  return s;
}

inline std::string query_table_text() {
  std::string out = "  Q   N (exact)          N (3 s.f.)   Boolean 2^Q\n";
  for (const auto& row : query_table_series().rows) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-3.0f %-18.10f %-12.3g %.0f\n", row[0], row[1], row[2],
                  row[3]);
    out += line;
  }
  return out;
}

inline ExperimentRecord run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord r{config, {}, json::object(), kVersion, 0.0};
  detail::require(config.format == "csv" || config.format == "json", ErrorCode::kConfig,
                  "format must be csv or json");
  const std::string& name = config.experiment;
  if (name == "grover") {
    detail_run::run_grover(r);
  } else if (name == "wave") {
    detail_run::run_wave(r);
  } else if (name == "lattice") {
    detail_run::run_lattice(r);
  } else if (name == "spatial") {
    detail_run::run_spatial(r);
  } else if (name == "solve-n") {
    const double n = grover::database_size_for_queries(config.q);
    r.summary["Q"] = config.q;
    r.summary["N_exact"] = n;
    r.summary["N_rounded"] = round_to_3_significant(n);
    r.summary["boolean_N"] = config.q <= 62 ? json(grover::boolean_search_size(config.q)) : json(nullptr);
  } else if (name == "table") {
    r.series.push_back(query_table_series());
  } else {
    throw Error(ErrorCode::kConfig, "unknown experiment '" + name + "'");
  }
  r.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string render(const Series& s, const std::string& format) {
  return format == "json" ? to_json(s).dump(2) + "\n" : to_csv(s);
}

// Writes <out>/<series>.csv (or .json) for each series and
// <out>/summary.json. Returns the paths written.
inline std::vector<std::filesystem::path> write_outputs(const ExperimentRecord& r,
                                                        const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  detail::require(!ec, ErrorCode::kIo, "cannot create output directory " + out.string());
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    detail::require(static_cast<bool>(f), ErrorCode::kIo, "cannot write " + p.string());
    written.push_back(p);
  };
  const std::string ext = r.config.format == "json" ? ".json" : ".csv";
  for (const Series& s : r.series) write(out / (s.name + ext), render(s, r.config.format));
  write(out / "summary.json", summary_json(r).dump(2) + "\n");
  return written;
}

}  // namespace wavesearch::experiment
