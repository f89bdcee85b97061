// Copyright 2026 The treeperc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// treeperc: Monte Carlo experiments for bond percolation on large random trees.
//
//   treeperc giant --family recursive --n 100000 --c 1 --trials 300 \
//       --seed 7 --format csv --out giant.csv
//
// Exit status: 0 on success, 2 on a configuration error, 1 on any other
// failure (for example an unwritable output path).

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "treeperc/experiment.hpp"
#include "treeperc/report.hpp"

namespace {

constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace treeperc;

  CLI::App app{"Bond percolation on large random trees: reproducible Monte Carlo experiments"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", "treeperc 0.1.0");

  std::string experiment;
  std::string family = "recursive";
  std::optional<std::size_t> n;
  double beta = 0.0;
  unsigned d = 2;
  unsigned h = 1;
  double alpha = 0.5;
  double c = 1.0;
  unsigned k = 1;
  unsigned j = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;

  app.add_option("experiment", experiment, "moments | giant | almost_giant | hk | eta | kappa")
      ->required()
      ->check(CLI::IsMember({"moments", "giant", "almost_giant", "hk", "eta", "kappa"}));
  app.add_option("--family", family, "Tree family")
      ->check(CLI::IsMember({"recursive", "scalefree", "cayley", "dary", "star"}));
  app.add_option("--n", n, "Edge count (vertices are 0..n); derived from --d/--h for dary");
  app.add_option("--beta", beta, "Scale-free attachment offset, > -1");
  app.add_option("--d", d, "Arity of the complete d-ary tree");
  app.add_option("--h", h, "Height of the complete d-ary tree");
  app.add_option("--alpha", alpha, "Star tree branch exponent in (0, 1)");
  app.add_option("--c", c, "Percolation constant in p = 1 - c / scale(n)")->required();
  app.add_option("--k", k, "Number of sampled vertices (moments, hk)");
  app.add_option("--j", j, "Number of ranked non-root clusters (almost_giant)");
  app.add_option("--trials", trials, "Monte Carlo trials")->required();
  app.add_option("--seed", seed, "Master seed")->required();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out, "Report path; CSV also writes <stem>.trials.csv")->required();
  app.add_option("--threads", threads,
                 "Worker threads (0: $TREEPERC_THREADS or all cores); never changes output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  ExperimentConfig config;
  config.experiment = *parse_experiment(experiment);
  config.family.family = *parse_family(family);
  config.family.beta = beta;
  config.family.d = d;
  config.family.h = h;
  config.family.alpha = alpha;
  config.c = c;
  config.k = k;
  config.j = j;
  config.trials = trials;
  config.master_seed = seed;
  config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  config.out_path = out;
  config.threads = threads;

  try {
    if (config.family.family == Family::kDary) {
      const std::size_t derived = dary_edge_count(d, h);
      if (n && *n != derived) {
        throw ConfigError("dary trees have n = d (d^h - 1) / (d - 1) = " +
                          std::to_string(derived) + "; drop --n or pass that value");
      }
      config.family.n = derived;
    } else {
      if (!n) throw ConfigError("--n is required for the " + family + " family");
      config.family.n = *n;
    }
    check_config(config);
  } catch (const std::exception& e) {
    std::cerr << "treeperc: configuration error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    const Report report = run_experiment(config);
    write_report(report, config.out_path);
    for (const auto& s : report.summaries) {
      std::cerr << s.test_name << ": estimate=" << s.estimate;
      if (s.theory) std::cerr << " theory=" << *s.theory;
      if (s.p_value) std::cerr << " p=" << *s.p_value;
      std::cerr << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "treeperc: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "treeperc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
