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
#include "wassdep/gaussian_index.hpp"
#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

using testing::gaussian_pair;

GaussianDependenceParams block_params(const Matrix& sx, const Matrix& sy,
                                      const Matrix& sxy) {
  return {{}, sx, sy, sxy};
}

TEST(GaussianIndexTest, BivariateMatchesClosedForm) {
  for (double rho = -1.0; rho <= 1.0; rho += 0.1) {
    const double r = std::clamp(rho, -1.0, 1.0);
    EXPECT_NEAR(i_gaussian(GaussianDependenceParams::bivariate(r)),
                gaussian_index_bivariate(r), 1e-7);
    // A common scale leaves the index alone; separate scales do not.
    EXPECT_NEAR(i_gaussian(GaussianDependenceParams::bivariate(r, 4.0, 4.0)),
                gaussian_index_bivariate(r), 1e-7);
  }
  EXPECT_GT(std::abs(i_gaussian(GaussianDependenceParams::bivariate(0.6, 2.0, 0.5)) -
                     gaussian_index_bivariate(0.6)),
            1e-3);
  EXPECT_NEAR(gaussian_index_bivariate(0.6), 0.17521, 1e-5);
  EXPECT_EQ(gaussian_index_bivariate(0.0), 0.0);
  EXPECT_NEAR(gaussian_index_bivariate(1.0), 1.0, 1e-15);
}

TEST(GaussianIndexTest, IndependentBlocksGiveZero) {
  const Matrix sx = Matrix::from_rows({{2.0, 0.3}, {0.3, 1.0}});
  const Matrix sy = Matrix::from_rows({{1.5}});
  EXPECT_NEAR(i_gaussian(block_params(sx, sy, Matrix(2, 1))), 0.0, 1e-12);
}

TEST(GaussianIndexTest, IdenticalBlocksGiveOne) {
  // Y = X: joint spectrum {2 lambda, 0}, kappa {2 lambda^2, 0}. The zero
  // kappas enter through a square root, so rounding shows up near 1e-8.
  const Matrix s = Matrix::from_rows({{2.0, 0.4}, {0.4, 0.7}});
  EXPECT_NEAR(i_gaussian(block_params(s, s, s)), 1.0, 1e-7);
}

TEST(GaussianIndexTest, OrthogonalChangeOfXBasisIsInvariant) {
  const Matrix sx = Matrix::from_rows({{1.0, 0.2}, {0.2, 2.0}});
  const Matrix sy = Matrix::from_rows({{1.0}});
  const Matrix sxy = Matrix::from_rows({{0.5}, {-0.4}});
  const double c = std::cos(0.7);
  const double sn = std::sin(0.7);
  const Matrix q = Matrix::from_rows({{c, -sn}, {sn, c}});
  Matrix qsx(2, 2);
  Matrix qsxy(2, 1);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) qsx(i, j) += q(i, k) * sx(k, l) * q(j, l);
      }
    }
    for (std::size_t k = 0; k < 2; ++k) qsxy(i, 0) += q(i, k) * sxy(k, 0);
  }
  EXPECT_NEAR(i_gaussian(block_params(sx, sy, sxy)),
              i_gaussian(block_params(qsx, sy, qsxy)), 1e-12);
}

TEST(GaussianIndexTest, ErrorsOnBadShapesAndDegenerateMarginals) {
  const Matrix one = Matrix::from_rows({{1.0}});
  EXPECT_THROW(i_gaussian(block_params(one, one, Matrix(2, 1))), InvalidInput);
  EXPECT_THROW(i_gaussian(block_params(Matrix::from_rows({{0.0}}),
                                       Matrix::from_rows({{0.0}}), Matrix(1, 1))),
               DegenerateMarginal);
  // Not positive semidefinite.
  EXPECT_THROW(i_gaussian(GaussianDependenceParams{
                   {}, one, one, Matrix::from_rows({{2.0}})}),
               InvalidInput);
}

TEST(FitSurrogateTest, HandComputedCovariance) {
  const auto s = PairedSample::from_columns(std::vector<double>{1, 2, 3, 4},
                                            std::vector<double>{2, 1, 4, 3});
  const auto g = fit_gaussian_surrogate(s);
  EXPECT_NEAR(g.mean[0], 2.5, 1e-15);
  EXPECT_NEAR(g.mean[1], 2.5, 1e-15);
  EXPECT_NEAR(g.sigma_x(0, 0), 5.0 / 3.0, 1e-14);
  EXPECT_NEAR(g.sigma_y(0, 0), 5.0 / 3.0, 1e-14);
  EXPECT_NEAR(g.sigma_xy(0, 0), 1.0, 1e-14);
}

TEST(FitSurrogateTest, DegenerateData) {
  EXPECT_THROW(fit_gaussian_surrogate(PairedSample::from_columns(
                   std::vector<double>{1, 2}, std::vector<double>{1, 2})),
               InvalidInput);
  EXPECT_THROW(fit_gaussian_surrogate(PairedSample::from_columns(
                   std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5})),
               DegenerateMarginal);
  // Collinear columns.
  PairedSample s{Matrix::from_rows({{1, 2}, {2, 4}, {3, 6}, {4, 8}}),
                 Matrix::from_rows({{1}, {0}, {1}, {3}}), 0};
  EXPECT_THROW(fit_gaussian_surrogate(s), DegenerateMarginal);
}

TEST(FitSurrogateTest, LargeSampleRecoversIndex) {
  Rng rng(41);
  const auto s = gaussian_pair(20000, 0.6, rng);
  EXPECT_NEAR(i_gaussian(fit_gaussian_surrogate(s)), gaussian_index_bivariate(0.6),
              0.02);
}

}  // namespace
}  // namespace wassdep
