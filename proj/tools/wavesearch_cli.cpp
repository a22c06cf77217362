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

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "wavesearch/wavesearch.hpp"

namespace ex = wavesearch::experiment;

namespace {

// Returns the --threshold option so the caller can tell whether it was given.
CLI::Option* add_common_flags(CLI::App& app, ex::ExperimentConfig& c, std::string& config_path,
                              double& threshold) {
  app.add_option("--mode", c.mode, "experiment mode (see README)");
  app.add_option("--n", c.n, "database size / vertex count");
  app.add_option("--targets", c.targets, "comma-separated target indices")->delimiter(',');
  app.add_option("--oracle-phase", c.oracle_phase, "oracle phase (radians)");
  app.add_option("--diffusion-phase", c.diffusion_phase, "diffusion phase (radians)");
  app.add_option("--steps", c.steps, "iteration count");
  CLI::Option* threshold_opt =
      app.add_option("--threshold", threshold, "stop when target probability reaches this");
  app.add_option("--energy", c.energy, "total oscillator energy");
  app.add_option("--length", c.length, "chain length L");
  app.add_option("--hopping", c.hopping, "hopping t");
  app.add_option("--impurity", c.impurity, "impurity strength V (positive = attractive)");
  app.add_option("--disorder", c.disorder, "disorder width W");
  app.add_option("--trials", c.trials, "disorder realizations");
  app.add_option("--boundary", c.boundary, "open | periodic");
  app.add_option("--gamma", c.gamma, "walk hopping rate (0: 1/N)");
  app.add_option("--time", c.time, "total evolution time (0: one full oscillation)");
  app.add_option("--dt", c.dt, "integrator step (0: 0.05/sqrt(N))");
  app.add_option("--dims", c.dims, "torus dimensions, e.g. 64 or 16x16");
  app.add_option("--q", c.q, "query count for solve-n");
  app.add_option("--seed", c.seed, "64-bit RNG seed");
  app.add_option("--threads", c.threads, "worker threads for ensembles");
  app.add_option("--out", c.out, "output directory");
  app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "JSON config; its fields override flags");
  return threshold_opt;
}

int run(const ex::ExperimentConfig& config) {
  const ex::ExperimentRecord record = ex::run_experiment(config);
  if (!config.out.empty()) {
    for (const auto& p : ex::write_outputs(record, config.out)) std::cerr << p.string() << "\n";
    return 0;
  }
  if (config.experiment == "table") {
    std::cout << ex::query_table_text();
  } else if (record.series.empty()) {
    std::cout << ex::summary_json(record)["summary"].dump(2) << "\n";
  } else {
    std::cout << ex::render(record.series.front(), config.format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover search and its wave, lattice and walk realizations"};
  app.require_subcommand(1);

  ex::ExperimentConfig config;
  std::string config_path;
  double threshold = 0.0;

  struct Entry {
    const char* name;
    const char* help;
  };
  const std::vector<Entry> entries{
      {"grover", "state-vector Grover iteration (modes: run, threshold, phase-sweep)"},
      {"wave", "classical oscillator bank (modes: focus, disperse, resources)"},
      {"lattice", "tight-binding chain (modes: bound, spectrum, disorder)"},
      {"spatial", "spatial search (modes: ctqw, dtqw, revival)"},
      {"solve-n", "database size solved for a query count Q"},
      {"table", "Q = 1, 2, 3 query table with the binary-search comparator"},
      {"run", "run an experiment described entirely by --config"}};
  std::vector<std::pair<CLI::App*, CLI::Option*>> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    subs.emplace_back(sub, add_common_flags(*sub, config, config_path, threshold));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& [sub, threshold_opt] : subs) {
      if (!sub->parsed()) continue;
      config.experiment = sub->get_name();
      if (threshold_opt->count() > 0) config.threshold = threshold;
    }
    if (!config_path.empty()) {
      config = ex::load_config(config_path, config);
    } else if (config.experiment == "run") {
      throw wavesearch::Error(wavesearch::ErrorCode::kConfig, "run needs --config");
    }
    return run(config);
  } catch (const wavesearch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 3;
  }
}
