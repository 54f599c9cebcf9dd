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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "wassdep/conditional_index.hpp"
#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

using testing::gaussian_pair;
using testing::uniform_pair;

const PartitionOptions kExact{PartitionMode::kExact, 0, false};
const PartitionOptions kBins{PartitionMode::kBins, 0, false};

TEST(IConditionalTest, HandExample) {
  // Groups {0, 1} and {0, 2} against the marginal {0, 0, 1, 2}: each group
  // is 1/4 away in W1 and E|Y - Y'| = 14/16.
  const auto s = PairedSample::from_columns(std::vector<double>{0, 0, 1, 1},
                                            std::vector<double>{0, 1, 0, 2});
  const IndexReport r = i_conditional(s, kExact, 1.0);
  EXPECT_NEAR(r.numerator, 0.25, 1e-15);
  EXPECT_NEAR(r.denominator, 0.875, 1e-15);
  EXPECT_NEAR(r.value, 2.0 / 7.0, 1e-15);
  EXPECT_EQ(r.index, "conditional");
  EXPECT_EQ(r.estimator, "exact");
  EXPECT_FALSE(r.bins.has_value());
  EXPECT_FALSE(r.variant.has_value());
}

TEST(IConditionalTest, FunctionalDependenceGivesOne) {
  Rng rng(31);
  std::vector<double> x(50);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = uniform01(rng);
    y[i] = std::sin(6.0 * x[i]);
  }
  const auto s = PairedSample::from_columns(x, y);
  for (double p : {1.0, 2.0}) {
    EXPECT_NEAR(i_conditional(s, kExact, p).value, 1.0, 1e-12);
  }
}

TEST(IConditionalTest, ProductGridGivesZero) {
  const auto s = PairedSample::from_columns(std::vector<double>{0, 0, 0, 1, 1, 1},
                                            std::vector<double>{2, 3, 7, 2, 3, 7});
  EXPECT_NEAR(i_conditional(s, kExact, 1.0).value, 0.0, 1e-15);
}

TEST(IConditionalTest, MonotoneXTransformIsBitIdentical) {
  Rng rng(32);
  const auto s = gaussian_pair(200, 0.5, rng);
  PairedSample t = s;
  for (std::size_t i = 0; i < s.size(); ++i) t.xs(i, 0) = std::exp(3.0 * s.xs(i, 0));
  // Make some x values repeat so that groups are not all singletons.
  PairedSample u = s;
  PairedSample v = t;
  for (std::size_t i = 0; i < s.size(); ++i) {
    u.xs(i, 0) = std::round(4.0 * s.xs(i, 0));
    v.xs(i, 0) = std::exp(u.xs(i, 0));
  }
  EXPECT_EQ(i_conditional(s, kExact, 1.0).value, i_conditional(t, kExact, 1.0).value);
  EXPECT_EQ(i_conditional(u, kExact, 2.0).value, i_conditional(v, kExact, 2.0).value);
}

TEST(IConditionalTest, BinsReportAndAccuracy) {
  Rng rng(33);
  const auto s = gaussian_pair(8000, 0.6, rng);
  const IndexReport r = i_conditional(s, kBins, 2.0);
  EXPECT_EQ(r.estimator, "bins");
  EXPECT_EQ(r.bins.value_or(0), 20);
  EXPECT_EQ(r.variant.value_or(""), "unsnapped");
  EXPECT_NEAR(r.value, gaussian_conditional_index(0.6), 0.05);
}

TEST(IConditionalTest, RejectsBadInput) {
  Rng rng(34);
  auto s = uniform_pair(10, rng);
  EXPECT_THROW(i_conditional(s, kExact, 0.5), InvalidInput);
  for (std::size_t i = 0; i < s.size(); ++i) s.ys(i, 0) = 1.0;
  EXPECT_THROW(i_conditional(s, kExact, 1.0), DegenerateMarginal);
}

TEST(DConditionalTest, OneDimensionalPathAgrees) {
  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = uniform_pair(60, rng);
    for (std::size_t i = 0; i < s.size(); ++i) s.ys(i, 0) += s.xs(i, 0);
    const auto family = partition(s, {PartitionMode::kBins, 4, false});
    for (double p : {1.0, 1.5, 2.0}) {
      EXPECT_NEAR(d_conditional(family, family.marginal, p),
                  d_conditional_1d(family, family.marginal, p), 1e-12);
    }
  }
}

TEST(DConditionalTest, RejectsForeignMarginal) {
  Rng rng(36);
  const auto s = uniform_pair(20, rng);
  const auto family = partition(s, kExact);
  EXPECT_THROW(d_conditional(family, to_measure(s.xs), 1.0), InvalidInput);
}

TEST(GaussianConditionalTest, ClosedForm) {
  EXPECT_EQ(gaussian_conditional_index(0.0), 0.0);
  EXPECT_EQ(gaussian_conditional_index(1.0), 1.0);
  EXPECT_NEAR(gaussian_conditional_index(0.6), 0.2, 1e-15);
  EXPECT_THROW(gaussian_conditional_index(-1.1), InvalidInput);
}

TEST(DConditionalEntropicTest, ApproachesExactForSmallEpsilon) {
  Rng rng(37);
  auto s = uniform_pair(24, rng);
  const auto family = partition(s, {PartitionMode::kBins, 3, false});
  const CostSpec spec = CostSpec::single(2.0);
  const double exact = std::pow(d_conditional(family, family.marginal, 2.0), 2.0);
  const double coarse = d_conditional_entropic(family, family.marginal, 0.05, spec);
  const double fine = d_conditional_entropic(family, family.marginal, 0.002, spec);
  EXPECT_LT(std::abs(fine - exact), std::abs(coarse - exact));
  EXPECT_NEAR(fine, exact, 0.02);
}

TEST(ExpectedPairCostTest, MatchesMeanDiscrepancy) {
  Rng rng(38);
  const auto law = testing::random_measure(15, 2, rng);
  EXPECT_NEAR(expected_pair_cost(law, CostSpec::single(1.5)), gmd_measure(law, 1.5),
              1e-12);
}

TEST(WLipschitzTest, LinearShiftFamily) {
  // Y | X = x is the x-shift of a fixed 3-point law: Lipschitz constant 2.
  std::vector<double> x;
  std::vector<double> y;
  for (double xv : {0.0, 1.0, 2.5}) {
    for (double e : {-1.0, 0.0, 1.0}) {
      x.push_back(xv);
      y.push_back(2.0 * xv + e);
    }
  }
  const auto family = partition(PairedSample::from_columns(x, y), kExact);
  EXPECT_NEAR(w_lipschitz_estimate(family), 2.0, 1e-12);
  const auto single = partition(PairedSample::from_columns(std::vector<double>{1, 1},
                                                           std::vector<double>{0, 1}),
                                kExact);
  EXPECT_THROW(w_lipschitz_estimate(single), InvalidInput);
}

}  // namespace
}  // namespace wassdep
