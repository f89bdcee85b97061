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

#ifndef TREEPERC_STATS_HPP_
#define TREEPERC_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeperc/generators.hpp"
#include "treeperc/tree.hpp"

namespace treeperc {

/// One estimate or test outcome. Optional fields are absent when the record
/// has no reference value or no associated test.
struct SummaryStats {
  std::string test_name;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> theory;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::size_t n_samples = 0;
};

// ---------------------------------------------------------------------------
// Exact enumeration

struct MomentPair {
  double lhs;  // E[(C0 / (n+1))^k] over all 2^n edge masks
  double rhs;  // E[p^L_k] over all (n+1)^k target tuples
};

/// Both sides of the root-cluster moment identity, each by brute force.
/// Limited to n <= 14 and 1 <= k <= 4; throws std::invalid_argument beyond.
MomentPair exact_moment_both_sides(const Tree& tree, unsigned k, double p);

// ---------------------------------------------------------------------------
// Estimators

struct MomentEstimate {
  double mean;
  double std_error;  // sample standard deviation (n - 1) over sqrt(n)
};

/// Mean of x^k with its standard error. Throws on empty input.
MomentEstimate empirical_moment(std::span<const double> samples, unsigned k);

double median(std::vector<double> samples);

// ---------------------------------------------------------------------------
// Goodness of fit

using Cdf = std::function<double(double)>;

/// Asymptotic Kolmogorov tail P(K > x) = 2 sum_{m>=1} (-1)^(m-1) exp(-2 m^2 x^2).
double kolmogorov_survival(double x);

/// One-sample Kolmogorov-Smirnov test. `statistic` is D = sup |F_emp - F|;
/// the p-value is kolmogorov_survival(sqrt(n) D). Needs at least 10 samples
/// and a cdf that is finite, within [0, 1] and non-decreasing on them.
SummaryStats ks_test(std::span<const double> samples, const Cdf& cdf);

/// Two-sample Kolmogorov-Smirnov distance with the asymptotic p-value at
/// effective size n1 n2 / (n1 + n2).
SummaryStats ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson chi-square against bucket probabilities, with buckets - 1 degrees
/// of freedom. Probabilities must sum to 1 within 1e-12 and every expected
/// count must be at least 5.
SummaryStats chi_square_test(std::span<const std::uint64_t> observed,
                             std::span<const double> expected);

/// Merges adjacent buckets, scanning from the tail, until every expected
/// count reaches min_expected. Returns the merged (observed, probabilities).
struct Buckets {
  std::vector<std::uint64_t> observed;
  std::vector<double> probability;
};
Buckets merge_sparse_buckets(std::span<const std::uint64_t> observed,
                             std::span<const double> probability,
                             double min_expected = 5.0);

/// Survival of the two-sided standard normal, 2 (1 - Phi(|z|)).
double normal_two_sided_p(double z);

// ---------------------------------------------------------------------------
// Reference laws

/// P(kappa(h) > j) = p^(d (d^j - 1) / (d - 1)) for 1 <= j <= h, where kappa
/// is the smallest depth of a removed edge in a percolated complete d-ary
/// tree of height h.
double kappa_survival(unsigned d, unsigned h, unsigned j, double p);

/// (x1, ..., xj) -> (1/x1, 1/x2 - 1/x1, ..., 1/xj - 1/x(j-1)). Input must be
/// strictly positive and non-increasing.
std::vector<double> spacing_transform(std::span<const double> ranked);

/// Inverse of spacing_transform: xi = 1 / (s1 + ... + si).
std::vector<double> atoms_from_spacings(std::span<const double> spacings);

double exponential_cdf(double rate, double x);
/// Chi distribution with `dof` degrees of freedom.
double chi_cdf(unsigned dof, double x);
double chi_mean(unsigned dof);
/// Gamma(shape, rate).
double gamma_cdf(double shape, double rate, double x);

/// Limit of the root-cluster proportion in the percolation regime,
/// E[exp(-c L_k)] for the family's limit reduced length L_k.
double giant_moment_limit(const FamilySpec& family, double c, unsigned k);

/// Limit of E[L_k] / scale(n): the first moment of L_k.
double reduced_length_limit_mean(const FamilySpec& family, unsigned k);

/// Intensity constant of the Poisson limit of rescaled non-root cluster
/// sizes: c exp(-c) for recursive trees, c exp(-c (1+beta)/(2+beta)) for
/// scale-free trees. 1/x1 and the inverse spacings are exponential with
/// this rate.
struct PoissonLimitRef {
  double rate;
};
PoissonLimitRef poisson_limit(const FamilySpec& family, double c);

}  // namespace treeperc

#endif  // TREEPERC_STATS_HPP_
