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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/assignment.hpp"
#include "test_util.hpp"
#include "wassdep/joint_index.hpp"
#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

using testing::gaussian_pair;
using testing::random_points;
using testing::to_table;

// min over permutations tau of (1/n) sum_i c(joint_i, product_tau(i)).
double assignment_oracle(const Matrix& joint, const Matrix& product,
                         const CostSpec& spec) {
  const std::size_t n = joint.rows();
  std::vector<std::size_t> tau(n);
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  double best = INFINITY;
  do {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += spec.cost(joint.row(i), product.row(tau[i]));
    best = std::min(best, acc / static_cast<double>(n));
  } while (std::next_permutation(tau.begin(), tau.end()));
  return best;
}

PairedSample grid_product_sample() {
  // Every (x, y) combination once: the empirical law is a product law.
  return PairedSample::from_columns(std::vector<double>{0, 0, 0, 1, 1, 1, 3, 3, 3},
                                    std::vector<double>{0, 2, 5, 0, 2, 5, 0, 2, 5});
}

TEST(DJointTest, PermuteEstimatorMatchesAssignmentOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 4;
    PairedSample s{random_points(n, 1, rng), random_points(n, 2, rng), 0};
    const auto sigma = random_derangement(n, rng);
    const auto est = product_estimator(s, sigma);
    const CostSpec spec = CostSpec::lq(1.0, 1.0 + trial % 2, {1, 2});
    const double oracle = std::pow(
        assignment_oracle(Matrix::hstack(s.xs, s.ys),
                          Matrix::hstack(s.xs, s.ys.select_rows(sigma)), spec),
        1.0 / spec.p);
    EXPECT_NEAR(d_joint(est.joint, est.product, spec), oracle, 1e-9);
  }
}

TEST(DJointTest, FullEstimatorMatchesReplicatedOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    PairedSample s{random_points(3, 1, rng), random_points(3, 1, rng), 0};
    const auto est = product_estimator(s, EstimatorMode::kFull, rng);
    ASSERT_EQ(est.product.size(), 9u);
    const CostSpec spec = CostSpec::lq(1.0, 1.0, {1, 1});
    const Matrix c = cost_matrix(est.joint, est.product, spec);
    const double oracle = oracle::uniform_transport_oracle(to_table(c));
    EXPECT_NEAR(d_joint(est.joint, est.product, spec), oracle, 1e-9);
  }
}

TEST(DJointTest, ExactProductLawIsZero) {
  Rng rng(13);
  const auto s = grid_product_sample();
  const auto est = product_estimator(s, EstimatorMode::kFull, rng);
  EXPECT_NEAR(d_joint(est.joint, est.product, CostSpec::lq(1.0, 1.0, {1, 1})), 0.0,
              1e-12);
  EXPECT_THROW(d_joint(est.joint, to_measure(s.xs), CostSpec::single(1.0)),
               InvalidInput);
}

TEST(IJointTest, ReportFieldsAndRatio) {
  Rng rng(14);
  const auto s = gaussian_pair(60, 0.5, rng);
  JointIndexOptions opts;
  Rng a(3);
  const IndexReport r = i_joint(s, opts, a);
  EXPECT_EQ(r.index, "joint");
  EXPECT_EQ(r.estimator, "permute");
  EXPECT_EQ(r.variant.value_or(""), "min_gmd");
  EXPECT_EQ(r.q.value_or(-1.0), 1.0);
  EXPECT_EQ(r.n, 60u);
  EXPECT_DOUBLE_EQ(r.denominator, std::min(gmd_ustat(s.xs, 1.0), gmd_ustat(s.ys, 1.0)));
  EXPECT_DOUBLE_EQ(r.value, r.numerator / r.denominator);
  EXPECT_EQ(r.exceeds_one, r.value > 1.0);

  // Same seed, same derangement, same answer.
  Rng b(3);
  EXPECT_EQ(i_joint(s, opts, b).value, r.value);
}

TEST(IJointTest, AlphaCombinatorUsesScaledBound) {
  Rng rng(15);
  PairedSample s = gaussian_pair(40, 0.3, rng);
  for (std::size_t i = 0; i < s.size(); ++i) s.ys(i, 0) *= 10.0;
  JointIndexOptions opts;
  opts.spec = CostSpec::weighted(2.0, 1.0, 1, 1);
  Rng a(1);
  const IndexReport r = i_joint(s, opts, a);
  EXPECT_EQ(r.alpha.value_or(0.0), 2.0);
  EXPECT_DOUBLE_EQ(r.denominator,
                   std::min(2.0 * gmd_ustat(s.xs, 1.0), gmd_ustat(s.ys, 1.0)));
}

TEST(IJointTest, ScaledMetricHasUnitDenominator) {
  Rng rng(16);
  const auto s = gaussian_pair(40, 0.7, rng);
  JointIndexOptions opts;
  opts.normalization = JointNormalization::kScaledMetric;
  Rng a(2);
  const IndexReport r = i_joint(s, opts, a);
  EXPECT_EQ(r.denominator, 1.0);
  EXPECT_EQ(r.variant.value_or(""), "scaled_metric");
  EXPECT_EQ(r.value, r.numerator);
}

TEST(IJointTest, RejectsOtherMetricsAndConstantMarginals) {
  Rng rng(17);
  const auto s = gaussian_pair(20, 0.3, rng);
  JointIndexOptions opts;
  opts.spec = CostSpec::lq(2.0, 1.0, {1, 1});
  Rng a(1);
  EXPECT_THROW(i_joint(s, opts, a), InvalidInput);

  PairedSample flat = s;
  for (std::size_t i = 0; i < flat.size(); ++i) flat.ys(i, 0) = 4.0;
  EXPECT_THROW(i_joint(flat, JointIndexOptions{}, a), DegenerateMarginal);
}

TEST(IJointTest, CommonScaleSimilarityInvariance) {
  Rng rng(18);
  const auto s = gaussian_pair(80, 0.6, rng);
  PairedSample t = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.xs(i, 0) = 3.0 * s.xs(i, 0) + 1.0;
    t.ys(i, 0) = -3.0 * s.ys(i, 0) - 7.0;
  }
  const auto sigma = random_derangement(s.size(), rng);
  const double a = i_joint(s, product_estimator(s, sigma), {}).value;
  const double b = i_joint(t, product_estimator(t, sigma), {}).value;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(MoriBoundsTest, ClosedFormValues) {
  auto [lo, hi] = mori_gaussian_bounds(0.0);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 0.0);
  std::tie(lo, hi) = mori_gaussian_bounds(0.6);
  EXPECT_NEAR(lo, 1.0 - std::sqrt(0.4), 1e-15);
  EXPECT_NEAR(hi, std::sqrt(0.2), 1e-15);
  std::tie(lo, hi) = mori_gaussian_bounds(1.0);
  EXPECT_EQ(lo, 1.0);
  EXPECT_EQ(hi, 1.0);
  for (double rho = -1.0; rho <= 1.0; rho += 0.05) {
    std::tie(lo, hi) = mori_gaussian_bounds(rho);
    EXPECT_LE(lo, hi + 1e-15);
  }
  EXPECT_THROW(mori_gaussian_bounds(1.5), InvalidInput);
}

TEST(DJointEntropicTest, ExactProductLawIsZero) {
  Rng rng(19);
  const auto s = grid_product_sample();
  const double v = d_joint_entropic(s, 0.5, CostSpec::single(2.0),
                                    EstimatorMode::kFull, rng);
  EXPECT_LE(std::abs(v), 1e-6);
}

TEST(DJointEntropicTest, PositiveUnderStrongDependence) {
  Rng rng(20);
  const auto s = gaussian_pair(60, 0.95, rng);
  EXPECT_GT(d_joint_entropic(s, 0.5, CostSpec::single(2.0),
                             EstimatorMode::kPermute, rng),
            0.05);
}

TEST(MartiIndexTest, ExplicitFamilies) {
  const DiscreteMeasure joint =
      DiscreteMeasure::uniform(Matrix::from_rows({{0, 0}, {1, 1}}));
  const DiscreteMeasure far =
      DiscreteMeasure::uniform(Matrix::from_rows({{0, 1}, {1, 0}}));
  const CostSpec spec = CostSpec::lq(1.0, 1.0, {1, 1});
  EXPECT_EQ(marti_index(joint, {far}, {joint}, spec), 1.0);
  EXPECT_EQ(marti_index(joint, {joint}, {far}, spec), 0.0);
  // W(joint, far) = 1 under l1: each atom moves one unit in y.
  const DiscreteMeasure half = mix(joint, far, 0.5);
  EXPECT_NEAR(marti_index(half, {far}, {joint}, spec), 0.5, 1e-12);
  EXPECT_THROW(marti_index(joint, {joint}, {joint}, spec), InvalidInput);
}

TEST(MartiIndexTest, ComonotoneSampleScoresOne) {
  Rng rng(21);
  std::vector<double> x(30);
  for (double& v : x) v = uniform01(rng);
  std::vector<double> y(x);
  for (double& v : y) v = std::exp(v);
  const auto s = PairedSample::from_columns(x, y);
  EXPECT_NEAR(marti_index(s, CostSpec::lq(1.0, 1.0, {1, 1}), rng), 1.0, 1e-12);
}

TEST(MultivariateTest, ThreeBlocks) {
  Rng rng(22);
  const Matrix a = random_points(12, 1, rng);
  const Matrix b = random_points(12, 2, rng);
  Matrix c(12, 1);
  for (std::size_t i = 0; i < 12; ++i) c(i, 0) = a(i, 0) + b(i, 1);
  const double v = d_joint_multivariate({a, b, c}, CostSpec::single(1.0), rng);
  EXPECT_GT(v, 0.0);
  EXPECT_THROW(d_joint_multivariate({a}, CostSpec::single(1.0), rng), InvalidInput);
  EXPECT_THROW(d_joint_multivariate({a, random_points(5, 1, rng)},
                                    CostSpec::single(1.0), rng),
               InvalidInput);
}

TEST(ReferenceVariantTest, ZeroOnExactProductLaw) {
  const auto s = grid_product_sample();
  const DiscreteMeasure rx = DiscreteMeasure::uniform(Matrix::from_rows({{0.5}, {2.0}}));
  const DiscreteMeasure ry = DiscreteMeasure::uniform(Matrix::from_rows({{1.0}, {4.0}}));
  EXPECT_NEAR(reference_measure_variant(s, rx, ry), 0.0, 1e-12);
}

TEST(ProductMeasureTest, WeightsAndLayout) {
  const DiscreteMeasure a({Matrix::from_rows({{1.0}, {2.0}})}, {0.25, 0.75});
  const DiscreteMeasure b({Matrix::from_rows({{5.0, 6.0}, {7.0, 8.0}})}, {0.5, 0.5});
  const auto p = product_measure(a, b);
  ASSERT_EQ(p.size(), 4u);
  ASSERT_EQ(p.dim(), 3u);
  EXPECT_EQ(p.weight(3), 0.375);
  EXPECT_EQ(p.point(1)[0], 1.0);
  EXPECT_EQ(p.point(1)[2], 8.0);
}

}  // namespace
}  // namespace wassdep
