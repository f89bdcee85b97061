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

#include "treeperc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "treeperc/isolation.hpp"
#include "treeperc/random.hpp"

namespace treeperc {

Rng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  std::uint64_t state = master_seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (trial_index * 0xD1B54A32D192ED03ULL);
  const std::uint64_t b = splitmix64(state);
  return Rng(b ^ splitmix64(state));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ExperimentInfo {
  Experiment experiment;
  std::string_view name;
};

constexpr ExperimentInfo kExperiments[] = {
    {Experiment::kMoments, "moments"}, {Experiment::kGiant, "giant"},
    {Experiment::kAlmostGiant, "almost_giant"}, {Experiment::kHk, "hk"},
    {Experiment::kEta, "eta"}, {Experiment::kKappa, "kappa"},
};

// Shared setup: the regime, and the tree itself when the family is
// deterministic.
struct Campaign {
  const ExperimentConfig& config;
  std::size_t n;
  Scale scale;
  double scale_length;
  double p;
  std::shared_ptr<const Tree> fixed_tree;

  Tree tree_for(Rng& rng) const {
    if (fixed_tree) return *fixed_tree;
    return generate(config.family, rng);
  }
};

SampleTable make_table(std::vector<std::string> columns, std::size_t trials) {
  SampleTable table;
  table.values.assign(columns.size() * trials, kNaN);
  table.columns = std::move(columns);
  return table;
}

double* row(SampleTable& table, std::size_t i) {
  return table.values.data() + i * table.columns.size();
}

std::vector<double> finite_only(std::vector<double> values) {
  std::erase_if(values, [](double x) { return !std::isfinite(x); });
  return values;
}

SummaryStats mean_record(std::string name, std::span<const double> values,
                         std::optional<double> theory) {
  SummaryStats s;
  s.test_name = std::move(name);
  const MomentEstimate m = empirical_moment(values, 1);
  s.estimate = m.mean;
  s.std_error = m.std_error;
  s.theory = theory;
  if (theory) s.statistic = m.mean - *theory;
  s.n_samples = values.size();
  return s;
}

SummaryStats named(SummaryStats s, std::string name, std::optional<double> theory = {}) {
  s.test_name = std::move(name);
  s.theory = theory;
  return s;
}

std::vector<Vertex> uniform_targets(std::size_t count, std::size_t n, Rng& rng) {
  std::vector<Vertex> targets(count);
  for (auto& v : targets) v = static_cast<Vertex>(uniform_below(rng, n + 1));
  return targets;
}

// ---------------------------------------------------------------------------

void run_moments(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  SampleTable table = make_table({"root_moment", "path_moment"}, cfg.trials);
  const double vertices = static_cast<double>(cg.n + 1);
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree tree = cg.tree_for(rng);
    const EdgeMask mask = percolate(tree, cg.p, rng);
    const PercolationOutcome outcome = cluster_sizes(tree, mask);
    const auto targets = uniform_targets(cfg.k, cg.n, rng);
    double* r = row(table, i);
    r[0] = std::pow(static_cast<double>(outcome.root_cluster_size) / vertices, cfg.k);
    r[1] = std::pow(cg.p, static_cast<double>(reduced_length(tree, targets)));
  });

  const double limit = giant_moment_limit(cfg.family, cfg.c, cfg.k);
  const auto lhs = table.column(0);
  const auto rhs = table.column(1);
  SummaryStats a = mean_record("moments.root_cluster", lhs, limit);
  SummaryStats b = mean_record("moments.reduced_length", rhs, limit);
  SummaryStats gap;
  gap.test_name = "moments.identity_gap";
  gap.estimate = a.estimate - b.estimate;
  gap.std_error = std::hypot(a.std_error, b.std_error);
  gap.theory = 0.0;
  if (gap.std_error > 0.0) {
    gap.statistic = gap.estimate / gap.std_error;
    gap.p_value = normal_two_sided_p(*gap.statistic);
  } else {
    gap.statistic = 0.0;
    gap.p_value = gap.estimate == 0.0 ? 1.0 : 0.0;
  }
  gap.n_samples = cfg.trials;
  report.summaries = {a, b, gap};
  report.trials = std::move(table);
}

void run_giant(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  SampleTable table = make_table({"root_fraction", "largest_other_fraction"}, cfg.trials);
  const double n = static_cast<double>(cg.n);
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree tree = cg.tree_for(rng);
    const PercolationOutcome outcome = cluster_sizes(tree, percolate(tree, cg.p, rng));
    double* r = row(table, i);
    r[0] = static_cast<double>(outcome.root_cluster_size) / n;
    r[1] = outcome.ranked_sizes.empty() ? 0.0 : outcome.ranked_sizes.front() / n;
  });
  report.summaries = {
      mean_record("giant.root_fraction", table.column(0),
                  giant_moment_limit(cfg.family, cfg.c, 1)),
      mean_record("giant.largest_other_fraction", table.column(1), std::nullopt),
  };
  report.trials = std::move(table);
}

void run_almost_giant(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  std::vector<std::string> columns = {"root_fraction"};
  for (unsigned r = 1; r <= cfg.j; ++r) columns.push_back("x" + std::to_string(r));
  SampleTable table = make_table(std::move(columns), cfg.trials);
  const double n = static_cast<double>(cg.n);
  const double rescale = std::log(n) / n;
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree tree = cg.tree_for(rng);
    const PercolationOutcome outcome = cluster_sizes(tree, percolate(tree, cg.p, rng));
    double* r = row(table, i);
    r[0] = static_cast<double>(outcome.root_cluster_size) / n;
    for (unsigned rank = 0; rank < cfg.j && rank < outcome.ranked_sizes.size(); ++rank) {
      r[1 + rank] = rescale * outcome.ranked_sizes[rank];
    }
  });

  const double rate = poisson_limit(cfg.family, cfg.c).rate;
  std::vector<SummaryStats> out;
  out.push_back(mean_record("almost_giant.root_fraction", table.column(0),
                            giant_moment_limit(cfg.family, cfg.c, 1)));

  // Trials with all j atoms present.
  std::vector<std::vector<double>> spacings(cfg.j);
  std::vector<std::vector<double>> inverse_atoms(cfg.j);
  std::vector<double> x1;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    std::vector<double> atoms(cfg.j);
    bool complete = true;
    for (unsigned r = 0; r < cfg.j; ++r) {
      atoms[r] = table.at(i, 1 + r);
      complete = complete && std::isfinite(atoms[r]) && atoms[r] > 0.0;
    }
    if (!complete) continue;
    const auto s = spacing_transform(atoms);
    for (unsigned r = 0; r < cfg.j; ++r) {
      spacings[r].push_back(s[r]);
      inverse_atoms[r].push_back(1.0 / atoms[r]);
    }
    x1.push_back(atoms[0]);
  }
  if (x1.size() >= 10) {
    auto exp_cdf = [rate](double x) { return exponential_cdf(rate, x); };
    out.push_back(named(ks_test(inverse_atoms[0], exp_cdf), "almost_giant.inverse_x1_ks"));

    SummaryStats med;
    med.test_name = "almost_giant.x1_median";
    med.estimate = median(x1);
    med.theory = rate / std::numbers::ln2;
    med.statistic = std::abs(med.estimate / *med.theory - 1.0);
    med.n_samples = x1.size();
    out.push_back(med);

    for (unsigned r = 1; r < cfg.j; ++r) {
      const std::string idx = std::to_string(r + 1);
      out.push_back(named(ks_test(spacings[r], exp_cdf), "almost_giant.spacing" + idx + "_ks"));
      const double shape = r + 1.0;
      out.push_back(named(
          ks_test(inverse_atoms[r], [rate, shape](double x) { return gamma_cdf(shape, rate, x); }),
          "almost_giant.inverse_x" + idx + "_gamma_ks"));
    }
  }
  report.summaries = std::move(out);
  report.trials = std::move(table);
}

void run_hk(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  SampleTable table = make_table({"length_k_scaled", "length1_scaled",
                                  "length2_minus_length1_scaled",
                                  "branchpoint_depth_scaled"},
                                 cfg.trials);
  const unsigned draws = std::max(cfg.k, 2u);
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree tree = cg.tree_for(rng);
    const auto targets = uniform_targets(draws, cg.n, rng);
    // Reduced lengths of nested prefixes V1, (V1, V2), ..., (V1, ..., Vk).
    PathMarker marker(tree.vertex_count());
    std::vector<std::size_t> prefix(draws);
    std::size_t length = 0;
    for (unsigned t = 0; t < draws; ++t) {
      length += marker.add(tree, targets[t]);
      prefix[t] = length;
    }
    double* r = row(table, i);
    r[0] = static_cast<double>(prefix[cfg.k - 1]) / cg.scale_length;
    r[1] = static_cast<double>(prefix[0]) / cg.scale_length;
    r[2] = static_cast<double>(prefix[1] - prefix[0]) / cg.scale_length;
    r[3] = branchpoint_depth(tree, targets[0], targets[1]) / cg.scale_length;
  });

  std::vector<SummaryStats> out;
  const auto lengths = table.column(0);
  out.push_back(mean_record("hk.mean_length_k", lengths,
                            reduced_length_limit_mean(cfg.family, cfg.k)));
  if (cfg.family.family == Family::kCayley && lengths.size() >= 10) {
    const unsigned dof = 2 * cfg.k;
    out.push_back(named(ks_test(lengths, [dof](double x) { return chi_cdf(dof, x); }),
                        "hk.chi_ks"));
  }
  out.push_back(named(ks_two_sample(table.column(2), table.column(1)),
                      "hk.increment_vs_height_ks"));
  out.push_back(mean_record("hk.branchpoint_depth", table.column(3), 0.0));
  report.summaries = std::move(out);
  report.trials = std::move(table);
}

void run_eta(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  SampleTable table =
      make_table({"first_frozen", "steps", "largest_frozen_scaled"}, cfg.trials);
  const double n = static_cast<double>(cg.n);
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree tree = cg.tree_for(rng);
    const IsolationTrace trace = isolate_root(tree, rng);
    double* r = row(table, i);
    r[0] = trace.frozen_sizes.front();
    r[1] = static_cast<double>(trace.steps());
    r[2] = *std::max_element(trace.frozen_sizes.begin(), trace.frozen_sizes.end()) *
           std::log(n) / n;
  });

  // Buckets j = 1..10 plus a tail j > 10 (no tail when n <= 10).
  const std::uint64_t cap = cg.n;
  const std::uint64_t listed = std::min<std::uint64_t>(cap, 10);
  std::vector<std::uint64_t> observed(listed + (cap > listed ? 1 : 0), 0);
  std::vector<double> probability(observed.size(), 0.0);
  for (std::uint64_t j = 1; j <= listed; ++j) probability[j - 1] = capped_eta_pmf(j, cap);
  if (cap > listed) {
    // P(eta > 10 | eta <= n) = (1/11 - 1/(n+1)) (n+1)/n.
    const double c = static_cast<double>(cap);
    probability.back() = (1.0 / (listed + 1.0) - 1.0 / (c + 1.0)) * (c + 1.0) / c;
  }
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto j = static_cast<std::uint64_t>(table.at(i, 0));
    ++observed[std::min(j, listed + 1) - 1];
  }
  std::vector<SummaryStats> out;
  const Buckets merged = merge_sparse_buckets(observed, probability);
  if (merged.observed.size() >= 2) {
    out.push_back(named(chi_square_test(merged.observed, merged.probability),
                        "eta.first_cut_chi_square"));
  }
  out.push_back(mean_record("eta.first_frozen", table.column(0), std::nullopt));
  out.push_back(mean_record("eta.steps", table.column(1), std::nullopt));
  report.summaries = std::move(out);
  report.trials = std::move(table);
}

void run_kappa(const Campaign& cg, unsigned threads, Report& report) {
  const auto& cfg = cg.config;
  const unsigned h = cfg.family.h;
  const unsigned d = cfg.family.d;
  SampleTable table = make_table({"kappa"}, cfg.trials);
  const DepthTable depth = depths(*cg.fixed_tree);
  for_each_trial(cfg.trials, threads, [&](std::size_t i) {
    Rng rng = derive_trial_rng(cfg.master_seed, i);
    const Tree& tree = *cg.fixed_tree;
    const EdgeMask mask = percolate(tree, cg.p, rng);
    // Edge heights are child depths; h + 1 means no edge was removed.
    std::uint32_t kappa = h + 1;
    for (std::size_t v = 1; v <= cg.n; ++v) {
      if (!mask.kept(static_cast<Vertex>(v))) kappa = std::min(kappa, depth.depth[v]);
    }
    row(table, i)[0] = kappa;
  });

  std::vector<std::uint64_t> observed(h + 1, 0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    ++observed[static_cast<std::size_t>(table.at(i, 0)) - 1];
  }
  std::vector<double> survival(h + 1, 1.0);  // survival[j] = P(kappa > j)
  for (unsigned j = 1; j <= h; ++j) survival[j] = kappa_survival(d, h, j, cg.p);
  std::vector<double> probability(h + 1);
  for (unsigned j = 1; j <= h; ++j) probability[j - 1] = survival[j - 1] - survival[j];
  probability[h] = survival[h];

  std::vector<SummaryStats> out;
  const Buckets merged = merge_sparse_buckets(observed, probability);
  if (merged.observed.size() >= 2) {
    out.push_back(named(chi_square_test(merged.observed, merged.probability),
                        "kappa.law_chi_square"));
  }
  const auto total = static_cast<double>(cfg.trials);
  std::uint64_t above = cfg.trials;
  for (unsigned j = 1; j <= h; ++j) {
    above -= observed[j - 1];
    SummaryStats s;
    s.test_name = "kappa.survival_j" + std::to_string(j);
    s.estimate = static_cast<double>(above) / total;
    s.std_error = std::sqrt(s.estimate * (1.0 - s.estimate) / total);
    s.theory = survival[j];
    const double sd = std::sqrt(survival[j] * (1.0 - survival[j]) / total);
    if (sd > 0.0) {
      s.statistic = (s.estimate - survival[j]) / sd;
      s.p_value = normal_two_sided_p(*s.statistic);
    }
    s.n_samples = cfg.trials;
    out.push_back(s);
  }
  report.summaries = std::move(out);
  report.trials = std::move(table);
}

}  // namespace

std::string_view experiment_name(Experiment experiment) {
  for (const auto& info : kExperiments) {
    if (info.experiment == experiment) return info.name;
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& info : kExperiments) {
    if (info.name == name) return info.experiment;
  }
  return std::nullopt;
}

Scale family_scale(const FamilySpec& family) {
  switch (family.family) {
    case Family::kCayley: return Scale::sqrt();
    case Family::kStar: return Scale::power(family.alpha);
    default: return Scale::log();
  }
}

std::vector<double> SampleTable::column(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, index));
  return finite_only(std::move(out));
}

const SummaryStats* Report::find(std::string_view test_name) const {
  for (const auto& s : summaries) {
    if (s.test_name == test_name) return &s;
  }
  return nullptr;
}

void check_config(const ExperimentConfig& config) {
  const Family family = config.family.family;
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  try {
    config.family.check();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(config.c >= 0.0) || !std::isfinite(config.c)) {
    throw ConfigError("c must be a finite real >= 0");
  }
  switch (config.experiment) {
    case Experiment::kMoments:
      if (config.k < 1) throw ConfigError("moments needs k >= 1");
      break;
    case Experiment::kHk:
      if (config.k < 1) throw ConfigError("hk needs k >= 1");
      break;
    case Experiment::kAlmostGiant:
      if (family != Family::kRecursive && family != Family::kScaleFree) {
        throw ConfigError("almost_giant needs --family recursive or scalefree");
      }
      if (config.j < 1) throw ConfigError("almost_giant needs j >= 1");
      if (!(config.c > 0.0)) throw ConfigError("almost_giant needs c > 0");
      break;
    case Experiment::kEta:
      if (family != Family::kRecursive) throw ConfigError("eta needs --family recursive");
      break;
    case Experiment::kKappa:
      if (family != Family::kDary) throw ConfigError("kappa needs --family dary");
      break;
    case Experiment::kGiant:
      break;
  }
  try {
    regime_p(config.family.edge_count(), config.c, family_scale(config.family));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

unsigned resolve_threads(const ExperimentConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("TREEPERC_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_trial(std::size_t trials, unsigned threads,
                    const std::function<void(std::size_t)>& body) {
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(trials, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= trials || failed.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

Report run_experiment(const ExperimentConfig& config) {
  check_config(config);
  Report report;
  report.config = config;
  report.n = config.family.edge_count();
  const Scale scale = family_scale(config.family);
  report.scale_length = scale(report.n);
  report.p = regime_p(report.n, config.c, scale);

  Campaign campaign{config, report.n, scale, report.scale_length, report.p, nullptr};
  if (config.family.deterministic()) {
    Rng unused(0);
    campaign.fixed_tree = std::make_shared<const Tree>(generate(config.family, unused));
  }
  const unsigned threads = resolve_threads(config);
  switch (config.experiment) {
    case Experiment::kMoments: run_moments(campaign, threads, report); break;
    case Experiment::kGiant: run_giant(campaign, threads, report); break;
    case Experiment::kAlmostGiant: run_almost_giant(campaign, threads, report); break;
    case Experiment::kHk: run_hk(campaign, threads, report); break;
    case Experiment::kEta: run_eta(campaign, threads, report); break;
    case Experiment::kKappa: run_kappa(campaign, threads, report); break;
  }
  return report;
}

}  // namespace treeperc
