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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "treeperc/experiment.hpp"
#include "treeperc/report.hpp"

using namespace treeperc;

namespace {

ExperimentConfig giant_config(std::size_t n, double c, std::size_t trials) {
  ExperimentConfig config;
  config.experiment = Experiment::kGiant;
  config.family.n = n;
  config.c = c;
  config.trials = trials;
  config.master_seed = 42;
  config.threads = 1;
  return config;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("derive_trial_rng") {
  Rng a = derive_trial_rng(7, 3);
  Rng b = derive_trial_rng(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(derive_trial_rng(7, 3)() != derive_trial_rng(7, 4)());
  CHECK(derive_trial_rng(7, 3)() != derive_trial_rng(8, 3)());

  // Neighbouring streams look uncorrelated.
  Rng s0 = derive_trial_rng(1, 0);
  Rng s1 = derive_trial_rng(1, 1);
  constexpr int kDraws = 10000;
  double sum_xy = 0.0, sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_yy = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = uniform01(s0);
    const double y = uniform01(s1);
    sum_x += x;
    sum_y += y;
    sum_xy += x * y;
    sum_xx += x * x;
    sum_yy += y * y;
  }
  const double cov = sum_xy / kDraws - (sum_x / kDraws) * (sum_y / kDraws);
  const double var_x = sum_xx / kDraws - (sum_x / kDraws) * (sum_x / kDraws);
  const double var_y = sum_yy / kDraws - (sum_y / kDraws) * (sum_y / kDraws);
  CHECK(std::abs(cov / std::sqrt(var_x * var_y)) < 4.0 / std::sqrt(double(kDraws)));
}

TEST_CASE("parse_experiment") {
  CHECK(parse_experiment("almost_giant") == Experiment::kAlmostGiant);
  CHECK(experiment_name(Experiment::kKappa) == "kappa");
  CHECK_FALSE(parse_experiment("giants").has_value());
}

TEST_CASE("check_config rejects bad combinations") {
  ExperimentConfig config = giant_config(1000, 1.0, 10);
  CHECK_NOTHROW(check_config(config));

  SUBCASE("c at or beyond ln n") {
    config.c = std::log(1000.0);
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("negative c") {
    config.c = -1.0;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("eta on a Cayley tree") {
    config.experiment = Experiment::kEta;
    config.family.family = Family::kCayley;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("kappa on a recursive tree") {
    config.experiment = Experiment::kKappa;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("almost_giant needs c > 0") {
    config.experiment = Experiment::kAlmostGiant;
    config.c = 0.0;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("almost_giant on a star") {
    config.experiment = Experiment::kAlmostGiant;
    config.family.family = Family::kStar;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("scale-free beta at -1") {
    config.family.family = Family::kScaleFree;
    config.family.beta = -1.0;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("k = 0") {
    config.experiment = Experiment::kMoments;
    config.k = 0;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
  SUBCASE("zero trials") {
    config.trials = 0;
    CHECK_THROWS_AS(check_config(config), ConfigError);
  }
}

TEST_CASE("giant at c = 0 keeps every edge") {
  const Report report = run_experiment(giant_config(500, 0.0, 5));
  CHECK(report.p == 1.0);
  const SummaryStats* root = report.find("giant.root_fraction");
  REQUIRE(root != nullptr);
  CHECK(root->estimate == doctest::Approx(501.0 / 500.0));
  CHECK(root->theory.value() == doctest::Approx(1.0));
  CHECK(report.find("giant.largest_other_fraction")->estimate == 0.0);
  CHECK(report.trials.rows() == 5);
}

TEST_CASE("moments sides agree on a star tree") {
  ExperimentConfig config;
  config.experiment = Experiment::kMoments;
  config.family = FamilySpec{.family = Family::kStar, .n = 400, .alpha = 0.5};
  config.c = 1.0;
  config.k = 2;
  config.trials = 4000;
  config.master_seed = 5;
  config.threads = 1;
  const Report report = run_experiment(config);
  const SummaryStats* gap = report.find("moments.identity_gap");
  REQUIRE(gap != nullptr);
  CHECK(std::abs(gap->statistic.value()) < 4.0);
  CHECK(report.p == doctest::Approx(1.0 - 1.0 / 20.0));
}

TEST_CASE("giant mean on recursive trees matches the exact expectation") {
  // depth(i) is a sum of independent Bernoulli(1/m), m = 1..i, so
  // E[p^depth(i)] = prod_{m <= i} (1 - (1 - p) / m).
  constexpr std::size_t kN = 1000;
  const Report report = run_experiment(giant_config(kN, 1.0, 4000));
  const double q = 1.0 - report.p;
  double product = 1.0;
  double exact = 1.0;
  for (std::size_t i = 1; i <= kN; ++i) {
    product *= 1.0 - q / double(i);
    exact += product;
  }
  exact /= double(kN);
  const SummaryStats* root = report.find("giant.root_fraction");
  REQUIRE(root != nullptr);
  CHECK(std::abs(root->estimate - exact) < 4.0 * root->std_error);
}

TEST_CASE("branchpoint depth on recursive trees matches the exact expectation") {
  // Both targets fall in the subtree of j with probability E[S_j^2] / (n+1)^2,
  // where S_j - 1 is beta-binomial(n - j, 1, j).
  constexpr std::size_t kN = 2000;
  ExperimentConfig config = giant_config(kN, 0.0, 20000);
  config.experiment = Experiment::kHk;
  const Report report = run_experiment(config);
  double exact = 0.0;
  for (std::size_t j = 1; j <= kN; ++j) {
    const double trials = double(kN - j);
    const double b = double(j);
    const double mean = trials / (b + 1.0);
    const double var = trials * b * (b + 1.0 + trials) / ((b + 1.0) * (b + 1.0) * (b + 2.0));
    exact += (var + (1.0 + mean) * (1.0 + mean)) / ((kN + 1.0) * (kN + 1.0));
  }
  const SummaryStats* lca = report.find("hk.branchpoint_depth");
  REQUIRE(lca != nullptr);
  const double scale = report.scale_length;
  CHECK(std::abs(lca->estimate * scale - exact) < 4.0 * lca->std_error * scale);
}

TEST_CASE("kappa survival matches the closed form") {
  ExperimentConfig config;
  config.experiment = Experiment::kKappa;
  config.family = FamilySpec{.family = Family::kDary, .d = 2, .h = 8};
  config.family.n = config.family.edge_count();
  config.c = 1.0;
  config.trials = 20000;
  config.master_seed = 9;
  config.threads = 1;
  const Report report = run_experiment(config);
  for (int j = 1; j <= 4; ++j) {
    const SummaryStats* s = report.find("kappa.survival_j" + std::to_string(j));
    REQUIRE(s != nullptr);
    CHECK(std::abs(s->statistic.value()) < 4.0);
  }
  REQUIRE(report.find("kappa.law_chi_square") != nullptr);
  CHECK(report.find("kappa.law_chi_square")->p_value.value() > 1e-3);
}

TEST_CASE("every experiment runs on a small instance") {
  for (Experiment experiment : {Experiment::kMoments, Experiment::kGiant, Experiment::kAlmostGiant,
                                Experiment::kHk, Experiment::kEta}) {
    for (Family family : {Family::kRecursive, Family::kScaleFree, Family::kCayley, Family::kStar}) {
      ExperimentConfig config;
      config.experiment = experiment;
      config.family = FamilySpec{.family = family, .n = 300};
      config.c = 0.5;
      config.k = 2;
      config.j = 3;
      config.trials = 40;
      config.threads = 2;
      bool valid = true;
      try {
        check_config(config);
      } catch (const ConfigError&) {
        valid = false;
      }
      CAPTURE(experiment_name(experiment));
      CAPTURE(family_name(family));
      if (!valid) continue;
      const Report report = run_experiment(config);
      CHECK(report.trials.rows() == 40);
      CHECK_FALSE(report.summaries.empty());
    }
  }
}

TEST_CASE("reports do not depend on the thread count") {
  for (Experiment experiment : {Experiment::kGiant, Experiment::kHk, Experiment::kAlmostGiant}) {
    ExperimentConfig config = giant_config(2000, 1.0, 64);
    config.experiment = experiment;
    config.j = 2;
    config.threads = 1;
    const Report one = run_experiment(config);
    config.threads = 8;
    const Report eight = run_experiment(config);
    CHECK(summary_csv(one) == summary_csv(eight));
    CHECK(trials_csv(one) == trials_csv(eight));
    config.format = OutputFormat::kJson;
    CHECK(report_json(one) == report_json(eight));
  }
}

TEST_CASE("TREEPERC_THREADS is honoured when threads is 0") {
  ExperimentConfig config = giant_config(10, 0.0, 1);
  config.threads = 0;
  ::setenv("TREEPERC_THREADS", "3", 1);
  CHECK(resolve_threads(config) == 3);
  ::unsetenv("TREEPERC_THREADS");
  config.threads = 5;
  CHECK(resolve_threads(config) == 5);
}

TEST_CASE("for_each_trial visits every index and rethrows") {
  std::vector<int> hits(1000, 0);
  for_each_trial(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(for_each_trial(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
}

TEST_CASE("report formats") {
  ExperimentConfig config = giant_config(100, 1.0, 3);
  const Report report = run_experiment(config);

  const std::string summary = summary_csv(report);
  CHECK(summary.rfind("experiment,family,n,beta,d,h,alpha,c,k,j,p,trials,seed,test,", 0) == 0);
  CHECK(summary.find("giant,recursive,100,") != std::string::npos);

  const std::string trials = trials_csv(report);
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 4);

  const auto doc = nlohmann::json::parse(report_json(report));
  CHECK(doc["config"]["experiment"] == "giant");
  CHECK(doc["config"]["n"] == 100);
  CHECK(doc["config"]["p"].get<double>() == report.p);
  CHECK(doc["summary"].size() == report.summaries.size());
  CHECK(doc["summary"][1]["theory"].is_null());
  CHECK(doc["trials"]["rows"].size() == 3);
  CHECK(doc["trials"]["rows"][0][0].get<double>() == report.trials.at(0, 0));

  CHECK(trials_path("out/run.csv") == std::filesystem::path("out/run.trials.csv"));
  CHECK(trials_path("run") == std::filesystem::path("run.trials.csv"));

  const auto dir = std::filesystem::temp_directory_path() / "treeperc_experiment_test";
  std::filesystem::create_directories(dir);
  write_report(report, dir / "giant.csv");
  CHECK(slurp(dir / "giant.csv") == summary);
  CHECK(slurp(dir / "giant.trials.csv") == trials);
  CHECK_THROWS_AS(write_report(report, dir / "missing" / "x.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
