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

#ifndef TREEPERC_EXPERIMENT_HPP_
#define TREEPERC_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeperc/generators.hpp"
#include "treeperc/percolation.hpp"
#include "treeperc/stats.hpp"

namespace treeperc {

enum class Experiment { kMoments, kGiant, kAlmostGiant, kHk, kEta, kKappa };
enum class OutputFormat { kCsv, kJson };

std::string_view experiment_name(Experiment experiment);
std::optional<Experiment> parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::kGiant;
  FamilySpec family;
  double c = 1.0;
  unsigned k = 1;  // moments, hk
  unsigned j = 1;  // almost_giant: how many ranked clusters to record
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  OutputFormat format = OutputFormat::kCsv;
  std::string out_path;
  unsigned threads = 0;  // 0: TREEPERC_THREADS, else hardware concurrency
};

/// A bad combination of experiment, family and parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError naming the violated constraint.
void check_config(const ExperimentConfig& config);

/// ln n for recursive, scale-free and d-ary trees; sqrt(n) for Cayley
/// trees; n^alpha for star trees.
Scale family_scale(const FamilySpec& family);

/// Per-trial samples, row-major, one row per trial index.
struct SampleTable {
  std::vector<std::string> columns;
  std::vector<double> values;

  std::size_t rows() const { return columns.empty() ? 0 : values.size() / columns.size(); }
  double at(std::size_t row, std::size_t column) const {
    return values[row * columns.size() + column];
  }
  std::vector<double> column(std::size_t index) const;
};

struct Report {
  ExperimentConfig config;
  std::size_t n = 0;          // edge count actually simulated
  double scale_length = 0.0;  // scale(n)
  double p = 1.0;             // regime retention probability
  std::vector<SummaryStats> summaries;
  SampleTable trials;

  const SummaryStats* find(std::string_view test_name) const;
};

/// Thread count the runner will use for this config.
unsigned resolve_threads(const ExperimentConfig& config);

/// Runs body(i) for every trial index on `threads` workers pulling indices
/// from a shared counter. The first exception thrown by a body is rethrown.
void for_each_trial(std::size_t trials, unsigned threads,
                    const std::function<void(std::size_t)>& body);

/// Runs the configured Monte Carlo campaign. Trial i always uses
/// derive_trial_rng(master_seed, i) and writes row i, so the report does not
/// depend on the thread count.
Report run_experiment(const ExperimentConfig& config);

}  // namespace treeperc

#endif  // TREEPERC_EXPERIMENT_HPP_
