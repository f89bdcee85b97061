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

#include "treeperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "treeperc/percolation.hpp"

namespace treeperc {
namespace {

constexpr double kSeriesCutoff = 1e-12;

double root_cluster_size(const Tree& tree, const EdgeMask& mask) {
  return static_cast<double>(cluster_sizes(tree, mask).root_cluster_size);
}

}  // namespace

MomentPair exact_moment_both_sides(const Tree& tree, unsigned k, double p) {
  const std::size_t n = tree.edge_count();
  if (n > 14) throw std::invalid_argument("exact enumeration limited to n <= 14");
  if (k < 1 || k > 4) throw std::invalid_argument("exact enumeration limited to 1 <= k <= 4");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");

  const double vertices = static_cast<double>(n + 1);

  double lhs = 0.0;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    EdgeMask mask(n);
    unsigned kept = 0;
    for (std::size_t e = 0; e < n; ++e) {
      const bool keep = (bits >> e) & 1u;
      mask.set(static_cast<Vertex>(e + 1), keep);
      kept += keep;
    }
    const double weight = std::pow(p, kept) * std::pow(1.0 - p, static_cast<double>(n - kept));
    if (weight == 0.0) continue;
    lhs += weight * std::pow(root_cluster_size(tree, mask) / vertices, k);
  }

  // Odometer over all (n+1)^k target tuples.
  double rhs = 0.0;
  std::vector<Vertex> targets(k, 0);
  PathMarker marker(n + 1);
  std::size_t tuples = 0;
  for (;;) {
    rhs += std::pow(p, static_cast<double>(reduced_length(tree, targets, marker)));
    ++tuples;
    std::size_t pos = 0;
    while (pos < k && ++targets[pos] == n + 1) targets[pos++] = 0;
    if (pos == k) break;
  }
  rhs /= static_cast<double>(tuples);
  return {lhs, rhs};
}

MomentEstimate empirical_moment(std::span<const double> samples, unsigned k) {
  if (samples.empty()) throw std::invalid_argument("empirical_moment needs samples");
  const auto count = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += std::pow(x, k);
  const double mean = sum / count;
  if (samples.size() < 2) return {mean, 0.0};
  double squares = 0.0;
  for (double x : samples) {
    const double dev = std::pow(x, k) - mean;
    squares += dev * dev;
  }
  return {mean, std::sqrt(squares / (count - 1.0) / count)};
}

double median(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("median of empty sample");
  const std::size_t mid = samples.size() / 2;
  std::nth_element(samples.begin(), samples.begin() + mid, samples.end());
  if (samples.size() % 2 == 1) return samples[mid];
  const double upper = samples[mid];
  const double lower = *std::max_element(samples.begin(), samples.begin() + mid);
  return 0.5 * (lower + upper);
}

double kolmogorov_survival(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Jacobi theta form of the cdf, fast for small x.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int m = 1;; ++m) {
      const double odd = 2.0 * m - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * x * x));
      sum += term;
      if (term < kSeriesCutoff) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / x * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int m = 1;; ++m) {
    const double term = std::exp(-2.0 * m * m * x * x);
    sum += (m % 2 == 1) ? term : -term;
    if (term < kSeriesCutoff) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

SummaryStats ks_test(std::span<const double> samples, const Cdf& cdf) {
  if (samples.size() < 10) throw std::invalid_argument("ks_test needs at least 10 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto count = static_cast<double>(sorted.size());
  double largest = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    if (!std::isfinite(f) || f < 0.0 || f > 1.0 || f < previous) {
      throw std::invalid_argument("degenerate reference cdf at x = " +
                                  std::to_string(sorted[i]));
    }
    previous = f;
    const double above = static_cast<double>(i + 1) / count - f;
    const double below = f - static_cast<double>(i) / count;
    largest = std::max({largest, above, below});
  }
  SummaryStats out;
  out.test_name = "ks";
  out.estimate = largest;
  out.statistic = largest;
  out.p_value = kolmogorov_survival(std::sqrt(count) * largest);
  out.n_samples = sorted.size();
  return out;
}

SummaryStats ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample needs samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double largest = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    largest = std::max(largest, std::abs(static_cast<double>(i) / nx -
                                         static_cast<double>(j) / ny));
  }
  SummaryStats out;
  out.test_name = "ks_two_sample";
  out.estimate = largest;
  out.statistic = largest;
  out.p_value = kolmogorov_survival(std::sqrt(nx * ny / (nx + ny)) * largest);
  out.n_samples = x.size() + y.size();
  return out;
}

SummaryStats chi_square_test(std::span<const std::uint64_t> observed,
                             std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    throw std::invalid_argument("chi_square_test needs matching bucket lists of length >= 2");
  }
  const double total_probability = std::accumulate(expected.begin(), expected.end(), 0.0);
  if (std::abs(total_probability - 1.0) > 1e-12) {
    throw std::invalid_argument("bucket probabilities sum to " +
                                std::to_string(total_probability) + ", not 1");
  }
  const auto total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * total;
    if (e < 5.0) {
      throw std::invalid_argument("expected count " + std::to_string(e) +
                                  " in bucket " + std::to_string(i) +
                                  " is below 5; merge tail buckets first");
    }
    const double diff = static_cast<double>(observed[i]) - e;
    statistic += diff * diff / e;
  }
  const double dof = static_cast<double>(observed.size() - 1);
  SummaryStats out;
  out.test_name = "chi_square";
  out.estimate = statistic;
  out.statistic = statistic;
  out.p_value = statistic > 0.0 ? boost::math::gamma_q(dof / 2.0, statistic / 2.0) : 1.0;
  out.n_samples = static_cast<std::size_t>(total);
  return out;
}

Buckets merge_sparse_buckets(std::span<const std::uint64_t> observed,
                             std::span<const double> probability,
                             double min_expected) {
  if (observed.size() != probability.size()) {
    throw std::invalid_argument("bucket lists differ in length");
  }
  const auto total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  Buckets out;
  std::uint64_t pending_count = 0;
  double pending_probability = 0.0;
  for (std::size_t i = observed.size(); i-- > 0;) {
    pending_count += observed[i];
    pending_probability += probability[i];
    if (pending_probability * total >= min_expected) {
      out.observed.push_back(pending_count);
      out.probability.push_back(pending_probability);
      pending_count = 0;
      pending_probability = 0.0;
    }
  }
  if (pending_probability > 0.0 || pending_count > 0) {
    if (out.observed.empty()) {
      out.observed.push_back(pending_count);
      out.probability.push_back(pending_probability);
    } else {
      out.observed.back() += pending_count;
      out.probability.back() += pending_probability;
    }
  }
  std::reverse(out.observed.begin(), out.observed.end());
  std::reverse(out.probability.begin(), out.probability.end());
  return out;
}

double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

double kappa_survival(unsigned d, unsigned h, unsigned j, double p) {
  if (j < 1 || j > h) {
    throw std::invalid_argument("kappa_survival needs 1 <= j <= h, got j = " +
                                std::to_string(j));
  }
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  return std::pow(p, static_cast<double>(dary_edge_count(d, j)));
}

std::vector<double> spacing_transform(std::span<const double> ranked) {
  std::vector<double> out;
  out.reserve(ranked.size());
  double previous_inverse = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!(ranked[i] > 0.0)) throw std::invalid_argument("spacing_transform needs positive atoms");
    if (i > 0 && ranked[i] > ranked[i - 1]) {
      throw std::invalid_argument("spacing_transform needs non-increasing atoms");
    }
    const double inverse = 1.0 / ranked[i];
    out.push_back(inverse - previous_inverse);
    previous_inverse = inverse;
  }
  return out;
}

std::vector<double> atoms_from_spacings(std::span<const double> spacings) {
  std::vector<double> out;
  out.reserve(spacings.size());
  double cumulative = 0.0;
  for (double s : spacings) {
    cumulative += s;
    out.push_back(1.0 / cumulative);
  }
  return out;
}

double exponential_cdf(double rate, double x) {
  return x <= 0.0 ? 0.0 : -std::expm1(-rate * x);
}

double chi_cdf(unsigned dof, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(dof / 2.0, x * x / 2.0);
}

double chi_mean(unsigned dof) {
  return std::numbers::sqrt2 * boost::math::tgamma_ratio((dof + 1) / 2.0, dof / 2.0);
}

double gamma_cdf(double shape, double rate, double x) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, rate * x);
}

namespace {

// E[exp(-c X)] for X chi-distributed with 2k degrees of freedom.
double chi_laplace(unsigned k, double c) {
  const double log_norm = (k - 1.0) * std::numbers::ln2 + std::lgamma(static_cast<double>(k));
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((2.0 * k - 1.0) * std::log(x) - 0.5 * x * x - c * x - log_norm);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

double scale_free_factor(double beta) { return (1.0 + beta) / (2.0 + beta); }

}  // namespace

double giant_moment_limit(const FamilySpec& family, double c, unsigned k) {
  const double kk = k;
  switch (family.family) {
    case Family::kRecursive:
      return std::exp(-c * kk);
    case Family::kScaleFree:
      return std::exp(-c * kk * scale_free_factor(family.beta));
    case Family::kDary:
      return std::exp(-c * kk / std::log(static_cast<double>(family.d)));
    case Family::kStar:
      // xi uniform on [0, 1]: E[exp(-c xi)] = (1 - e^-c) / c.
      return c == 0.0 ? 1.0 : std::pow(-std::expm1(-c) / c, kk);
    case Family::kCayley:
      return chi_laplace(k, c);
  }
  throw std::invalid_argument("unknown family");
}

double reduced_length_limit_mean(const FamilySpec& family, unsigned k) {
  const double kk = k;
  switch (family.family) {
    case Family::kRecursive: return kk;
    case Family::kScaleFree: return kk * scale_free_factor(family.beta);
    case Family::kDary: return kk / std::log(static_cast<double>(family.d));
    case Family::kStar: return kk / 2.0;
    case Family::kCayley: return chi_mean(2 * k);
  }
  throw std::invalid_argument("unknown family");
}

PoissonLimitRef poisson_limit(const FamilySpec& family, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("the Poisson limit needs c > 0");
  switch (family.family) {
    case Family::kRecursive: return {c * std::exp(-c)};
    case Family::kScaleFree: return {c * std::exp(-c * scale_free_factor(family.beta))};
    default:
      throw std::invalid_argument("no Poisson limit for the " +
                                  std::string(family_name(family.family)) + " family");
  }
}

}  // namespace treeperc
