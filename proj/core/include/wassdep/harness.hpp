// Copyright 2026 The wassdep Authors
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

// Independence tests, robustness checks, convergence-rate experiments and
// the bivariate Gaussian reference curves.

#ifndef WASSDEP_HARNESS_HPP
#define WASSDEP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wassdep/empirical.hpp"
#include "wassdep/random.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

// Worker count for replicate loops: WASSDEP_THREADS if set and positive,
// else 1. Results never depend on it.
int harness_threads();

// ---------------------------------------------------------------- testing

// A statistic may draw from the rng it is handed (e.g. a derangement).
using StatisticFn = std::function<double(const PairedSample&, Rng&)>;

struct StatisticOptions {
  double p = 1.0;
  EstimatorMode mode = EstimatorMode::kPermute;
  PartitionOptions partition{PartitionMode::kBins, 0, false};
};

// Named statistics, larger meaning more dependence:
//   d_joint        D under the l1 product metric
//   i_joint        its min-GMD normalization
//   i_conditional  D^p / U^p with the partition in `options`
//   gaussian       i_gaussian of the fitted covariance
//   concordance    copula-mode concordance (one-sided: positive dependence)
StatisticFn named_statistic(const std::string& name,
                            const StatisticOptions& options = {});
std::vector<std::string> statistic_names();

struct PermutationTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int permutations = 0;
  std::uint64_t seed = 0;
  std::vector<double> null_statistics;
};

// p = (1 + #{b : T(x, y_pi_b) >= T(x, y)}) / (B + 1). Replicate b (0 is the
// observed sample) runs on Rng(derive_seed(seed, b)). Throws InvalidInput
// when B < 19.
PermutationTestResult permutation_test(const PairedSample& sample,
                                       const StatisticFn& statistic, int B,
                                       std::uint64_t seed);
// The master seed is drawn from `rng`.
PermutationTestResult permutation_test(const PairedSample& sample,
                                       const std::string& statistic, int B,
                                       Rng& rng,
                                       const StatisticOptions& options = {});

// Asymptotic one-sample Kolmogorov-Smirnov p-value against U(0, 1), with
// Stephens' small-sample correction.
double ks_uniform_pvalue(std::span<const double> values);
double ks_uniform_statistic(std::span<const double> values);

// ---------------------------------------------------------- robustness

struct ContaminationRow {
  double epsilon = 0.0;
  double lhs = 0.0;  // D^p of the mixture
  double rhs = 0.0;  // (1 - eps) D^p + eps D^p(contaminant)
  bool holds = false;
};

struct ContaminationReport {
  double p = 1.0;
  double base = 0.0;        // D^p of the sample law
  double contaminant = 0.0;  // D^p of the contaminant law
  std::vector<ContaminationRow> rows;
  bool passed = false;
};

// D uses the l1 product metric and the full product of marginals, solved
// exactly. Without a contaminant the independent coupling of the sample
// marginals is used. A given contaminant must have the same marginal laws.
ContaminationReport contamination_check(
    const PairedSample& sample, std::span<const double> epsilon_grid,
    double p = 1.0, const std::optional<PairedSample>& contaminant = {});

struct LipschitzRow {
  double lhs = 0.0;  // |GMD(P)^(1/p) - GMD(Q)^(1/p)|
  double rhs = 0.0;  // 2 W_p(P, Q)
  bool holds = false;
};

struct LipschitzReport {
  double p = 1.0;
  std::vector<LipschitzRow> rows;
  bool passed = false;
};

LipschitzReport gmd_lipschitz_check(
    const std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>>& pairs,
    double p = 1.0);

// `count` pairs of uniform random measures with n atoms on [0, 1]^dim.
std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>> random_measure_pairs(
    std::size_t count, std::size_t n, std::size_t dim, Rng& rng);

struct DiscontinuityReport {
  std::size_t n = 0;
  double p = 1.0;
  double exact_index = 0.0;   // one group per distinct x
  double binned_index = 0.0;  // default cube rule
  int bins = 0;
  int grid = 0;  // y levels of the coarsened support
  // Nested distance between the empirical two-stage law (one Dirac
  // conditional per x) and the two-stage law of the product, y coarsened.
  double adapted_distance = 0.0;
};

// Independent U(0, 1) pairs. Redraws when x has ties.
DiscontinuityReport discontinuity_demo(std::size_t n, Rng& rng, double p = 1.0);
// Same report for a given sample (x and y one-dimensional, x without ties).
DiscontinuityReport discontinuity_report(const PairedSample& sample,
                                         double p = 1.0);

// ---------------------------------------------------------------- rates

struct RateCase {
  std::string name;
  double truth = 0.0;
  // Estimate from a fresh sample of size n.
  std::function<double(std::size_t, Rng&)> estimate;
  double band_lo = 0.0;
  double band_hi = 0.0;
};

// W1 between U(0, 1) and U(0.5, 1.5) from two samples of size n; truth 0.5.
RateCase w1_shift_case();
// D with W2 on R^2 for a standard bivariate Gaussian, permute estimator;
// truth from the Gaussian W2 formula.
RateCase joint_w2_case(double rho = 0.5);
// Sinkhorn divergence between joint and permuted product, squared Euclidean
// cost, fixed epsilon; truth from the Gaussian entropic closed form.
RateCase entropic_joint_case(double rho = 0.5, double epsilon = 0.5);

// Debiased entropic discrepancy between N(0, a) and N(0, b), cost |x - y|^2.
double gaussian_sinkhorn_divergence(const Matrix& a, const Matrix& b,
                                    double epsilon);
// Entropic discrepancy (cost plus eps * KL), same setting.
double gaussian_entropic_cost(const Matrix& a, const Matrix& b, double epsilon);

struct RateReport {
  std::string name;
  std::vector<std::size_t> n_grid;
  std::vector<double> mean_abs_error;
  double slope = 0.0;
  double ci_lo = 0.0;  // 95% bootstrap percentile interval
  double ci_hi = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool in_band = false;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// Least-squares slope of log mean |estimate - truth| against log n.
// Throws InvalidInput for fewer than 2 distinct grid sizes or < 2 replicates.
RateReport rate_experiment(const RateCase& rate_case,
                           const std::vector<std::size_t>& n_grid,
                           int replicates, std::uint64_t seed);

// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

// ------------------------------------------------ bivariate Gaussian curves

struct Figure1Row {
  double rho = 0.0;
  double conditional = 0.0;  // p = 2
  double gaussian = 0.0;
  double joint_lower = 0.0;  // p = 1, l1 metric
  double joint_upper = 0.0;
};

std::vector<Figure1Row> figure1_table(std::span<const double> rho_grid);
// `points` evenly spaced values from -1 to 1.
std::vector<double> rho_grid(int points);

}  // namespace wassdep

#endif  // WASSDEP_HARNESS_HPP
