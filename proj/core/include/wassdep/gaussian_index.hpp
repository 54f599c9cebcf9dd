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

// Dependence index of a Gaussian vector from its covariance blocks.

#ifndef WASSDEP_GAUSSIAN_INDEX_HPP
#define WASSDEP_GAUSSIAN_INDEX_HPP

#include <utility>
#include <vector>

#include "wassdep/empirical.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

struct GaussianDependenceParams {
  std::vector<double> mean;  // m1 + m2, may be left empty
  Matrix sigma_x;            // m1 x m1
  Matrix sigma_y;            // m2 x m2
  Matrix sigma_xy;           // m1 x m2

  // [[S_x, S_xy], [S_xy^T, S_y]]
  Matrix joint() const;
  // block-diag(S_x, S_y): covariance of the independent coupling.
  Matrix independent() const;
  // Shapes only; definiteness is checked where it matters.
  void validate() const;

  static GaussianDependenceParams bivariate(double rho, double var_x = 1.0,
                                           double var_y = 1.0);
};

// (sum lambda_j - sum sqrt(kappa_j)) /
// (sum lambda_j - sum_{j <= max(m1, m2)} sqrt(lambda_X,j^2 + lambda_Y,j^2)),
// lambda from the joint covariance, kappa from S0^(1/2) S S0^(1/2), shorter
// marginal spectra padded with zeros.
double i_gaussian(const GaussianDependenceParams& params);
// (numerator, denominator) of the same ratio.
std::pair<double, double> i_gaussian_terms(const GaussianDependenceParams& params);

// (2 - sqrt(1 + rho) - sqrt(1 - rho)) / (2 - sqrt(2)).
double gaussian_index_bivariate(double rho);

// Unbiased sample covariance split into blocks. Needs n > m1 + m2; throws
// DegenerateMarginal when the covariance is rank deficient.
GaussianDependenceParams fit_gaussian_surrogate(const PairedSample& sample);

}  // namespace wassdep

#endif  // WASSDEP_GAUSSIAN_INDEX_HPP
