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
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "wassdep/concordance.hpp"
#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

using testing::gaussian_pair;
using testing::uniform_pair;

// W2 between the sample and {(x_i, x_i)} by the general solver.
double diagonal_oracle(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  Matrix a(n, 2);
  Matrix b(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = x[i];
    a(i, 1) = y[i];
    b(i, 0) = x[i];
    b(i, 1) = x[i];
  }
  return solve_exact(DiscreteMeasure::uniform(a), DiscreteMeasure::uniform(b),
                     CostSpec::single(2.0))
      .distance;
}

// Cost of the diagonal map for independent uniforms: with S = U + V and
// G = F_S(S), E (U - G)^2 + E (V - G)^2 by midpoint quadrature.
double independent_uniform_cost(int grid) {
  auto tri_cdf = [](double s) {
    return s <= 1.0 ? 0.5 * s * s : 1.0 - 0.5 * (2.0 - s) * (2.0 - s);
  };
  double acc = 0.0;
  const double h = 1.0 / grid;
  for (int i = 0; i < grid; ++i) {
    const double u = (i + 0.5) * h;
    for (int j = 0; j < grid; ++j) {
      const double v = (j + 0.5) * h;
      const double g = tri_cdf(u + v);
      acc += (u - g) * (u - g) + (v - g) * (v - g);
    }
  }
  return acc * h * h;
}

TEST(ConcordanceTest, ExtremesAreExact) {
  Rng rng(51);
  std::vector<double> x(101);
  for (double& v : x) v = uniform01(rng);
  std::vector<double> anti(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) anti[i] = 1.0 - x[i];
  EXPECT_EQ(concordance_index(PairedSample::from_columns(x, x)).value, 1.0);
  EXPECT_EQ(concordance_index(PairedSample::from_columns(x, anti)).value, -1.0);
}

TEST(ConcordanceTest, DiagonalDistanceMatchesExactSolver) {
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = gaussian_pair(40, 0.3 * trial - 0.6, rng);
    EXPECT_NEAR(d_to_diagonal(s), diagonal_oracle(s.xs.data(), s.ys.data()), 1e-9);
  }
}

TEST(ConcordanceTest, AntitheticDenominatorMatchesExactSolver) {
  Rng rng(53);
  std::vector<double> x(60);
  for (double& v : x) v = standard_normal(rng);
  for (double a : {0.0, 0.7}) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = a - x[i];
    EXPECT_NEAR(antithetic_denominator(x, a), diagonal_oracle(x, y), 1e-9);
  }
  EXPECT_THROW(antithetic_denominator(std::vector<double>{2, 2}, 0.0),
               DegenerateMarginal);
}

TEST(ConcordanceTest, IndependentCopulaOracle) {
  // Quadrature gives the squared distance 1/10; the denominator is 1/sqrt(3).
  const double cost = independent_uniform_cost(1000);
  EXPECT_NEAR(cost, 0.1, 1e-6);
  const double expected = 1.0 - 2.0 * std::sqrt(cost) * std::sqrt(3.0);
  Rng rng(54);
  const auto s = uniform_pair(20000, rng);
  EXPECT_NEAR(concordance_index(s).value, expected, 0.02);
}

TEST(ConcordanceTest, MonotoneMarginalTransformsAreBitIdentical) {
  Rng rng(55);
  const auto s = gaussian_pair(300, 0.4, rng);
  PairedSample t = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.xs(i, 0) = std::exp(s.xs(i, 0));
    t.ys(i, 0) = std::pow(s.ys(i, 0), 3) + 2.0;
  }
  EXPECT_EQ(concordance_index(s).value, concordance_index(t).value);
}

TEST(ConcordanceTest, IncreasingInCorrelation) {
  double previous = -2.0;
  for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    Rng rng(56);
    const double v = concordance_index(gaussian_pair(5000, rho, rng)).value;
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(ConcordanceTest, RawModeSymmetryChecks) {
  Rng rng(57);
  const auto s = gaussian_pair(400, 0.5, rng);
  ConcordanceOptions raw{ConcordanceMode::kRaw, std::nullopt, false};
  const auto r = concordance_index(s, raw);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.mode, ConcordanceMode::kRaw);

  // Exponential x is far from symmetric.
  PairedSample skew = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    skew.xs(i, 0) = std::exp(2.0 * s.xs(i, 0));
    skew.ys(i, 0) = std::exp(2.0 * s.ys(i, 0));
  }
  EXPECT_FALSE(concordance_index(skew, raw).warnings.empty());
  raw.strict = true;
  EXPECT_THROW(concordance_index(skew, raw), InvalidInput);
}

TEST(ConcordanceTest, RawModeExtremes) {
  std::vector<double> x{-2, -1, 0, 1, 2};
  std::vector<double> y{2, 1, 0, -1, -2};
  ConcordanceOptions raw{ConcordanceMode::kRaw, 0.0, true};
  EXPECT_EQ(concordance_index(PairedSample::from_columns(x, y), raw).value, -1.0);
  EXPECT_EQ(concordance_index(PairedSample::from_columns(x, x), raw).value, 1.0);
}

TEST(ConcordanceTest, MapIsMonotoneMatching) {
  const auto s = PairedSample::from_columns(std::vector<double>{3, 1, 2},
                                            std::vector<double>{0, 5, 0});
  const auto m = diagonal_transport_map(s);
  EXPECT_EQ(m.s, (std::vector<double>{3, 6, 2}));
  EXPECT_EQ(m.g, (std::vector<double>{2, 3, 1}));
}

TEST(KsDistanceTest, HandValues) {
  EXPECT_EQ(ks_distance(std::vector<double>{1, 2}, std::vector<double>{1, 2}), 0.0);
  EXPECT_EQ(ks_distance(std::vector<double>{1, 2}, std::vector<double>{3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(
      ks_distance(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2.5}), 0.5);
}

}  // namespace
}  // namespace wassdep
