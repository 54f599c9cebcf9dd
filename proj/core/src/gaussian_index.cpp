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

#include "wassdep/gaussian_index.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"

namespace wassdep {
namespace {

constexpr double kPsdTolerance = 1e-8;
constexpr double kKappaClamp = 1e-10;
constexpr double kRankTolerance = 1e-12;

}  // namespace

Matrix GaussianDependenceParams::joint() const {
  validate();
  const std::size_t m1 = sigma_x.rows();
  const std::size_t m2 = sigma_y.rows();
  Matrix s(m1 + m2, m1 + m2);
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = 0; j < m1; ++j) s(i, j) = sigma_x(i, j);
    for (std::size_t j = 0; j < m2; ++j) {
      s(i, m1 + j) = sigma_xy(i, j);
      s(m1 + j, i) = sigma_xy(i, j);
    }
  }
  for (std::size_t i = 0; i < m2; ++i) {
    for (std::size_t j = 0; j < m2; ++j) s(m1 + i, m1 + j) = sigma_y(i, j);
  }
  return s;
}

Matrix GaussianDependenceParams::independent() const {
  Matrix s = joint();
  const std::size_t m1 = sigma_x.rows();
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = m1; j < s.cols(); ++j) {
      s(i, j) = 0.0;
      s(j, i) = 0.0;
    }
  }
  return s;
}

void GaussianDependenceParams::validate() const {
  const std::size_t m1 = sigma_x.rows();
  const std::size_t m2 = sigma_y.rows();
  if (m1 == 0 || m2 == 0) throw InvalidInput("gaussian params: empty block");
  if (sigma_x.cols() != m1 || sigma_y.cols() != m2) {
    throw InvalidInput("gaussian params: marginal covariances must be square");
  }
  if (sigma_xy.rows() != m1 || sigma_xy.cols() != m2) {
    throw InvalidInput("gaussian params: cross covariance has the wrong shape");
  }
  if (!mean.empty() && mean.size() != m1 + m2) {
    throw InvalidInput("gaussian params: mean has the wrong length");
  }
}

GaussianDependenceParams GaussianDependenceParams::bivariate(double rho,
                                                             double var_x,
                                                             double var_y) {
  if (!(std::abs(rho) <= 1.0)) throw InvalidInput("bivariate: |rho| must be <= 1");
  return {{0.0, 0.0},
          Matrix::from_rows({{var_x}}),
          Matrix::from_rows({{var_y}}),
          Matrix::from_rows({{rho * std::sqrt(var_x * var_y)}})};
}

std::pair<double, double> i_gaussian_terms(const GaussianDependenceParams& params) {
  params.validate();
  const Eigen::MatrixXd s = detail::to_eigen(params.joint());
  const Eigen::MatrixXd s0 = detail::to_eigen(params.independent());
  detail::require_symmetric(s, "i_gaussian");
  const Eigen::VectorXd lambda =
      detail::psd_eigenvalues(s, kPsdTolerance, "i_gaussian");
  const Eigen::VectorXd lx = detail::psd_eigenvalues(
      detail::to_eigen(params.sigma_x), kPsdTolerance, "i_gaussian");
  const Eigen::VectorXd ly = detail::psd_eigenvalues(
      detail::to_eigen(params.sigma_y), kPsdTolerance, "i_gaussian");
  const Eigen::MatrixXd root0 = detail::psd_sqrt(s0, kPsdTolerance, "i_gaussian");
  const Eigen::MatrixXd inner = root0 * s * root0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (inner + inner.transpose()),
                                                    Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());

  double sum_sqrt_kappa = 0.0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    const double k = es.eigenvalues()(j);
    if (k < -kKappaClamp * scale) {
      throw InvalidInput("i_gaussian: covariance product is indefinite");
    }
    sum_sqrt_kappa += std::sqrt(std::max(k, 0.0));
  }
  const double sum_lambda = lambda.sum();
  const Eigen::Index m = std::max(lx.size(), ly.size());
  double extremal = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double a = j < lx.size() ? lx(j) : 0.0;
    const double b = j < ly.size() ? ly(j) : 0.0;
    extremal += std::hypot(a, b);
  }
  const double denominator = sum_lambda - extremal;
  if (!(denominator > 0.0)) {
    throw DegenerateMarginal("i_gaussian: zero denominator (degenerate marginals)");
  }
  return {sum_lambda - sum_sqrt_kappa, denominator};
}

double i_gaussian(const GaussianDependenceParams& params) {
  const auto [numerator, denominator] = i_gaussian_terms(params);
  return numerator / denominator;
}

double gaussian_index_bivariate(double rho) {
  if (!(std::abs(rho) <= 1.0)) {
    throw InvalidInput("gaussian_index_bivariate: |rho| must be <= 1");
  }
  return (2.0 - std::sqrt(1.0 + rho) - std::sqrt(1.0 - rho)) /
         (2.0 - std::sqrt(2.0));
}

GaussianDependenceParams fit_gaussian_surrogate(const PairedSample& sample) {
  sample.validate();
  const std::size_t n = sample.size();
  const std::size_t m1 = sample.dim_x();
  const std::size_t m2 = sample.dim_y();
  const std::size_t m = m1 + m2;
  if (n <= m) {
    throw InvalidInput("fit_gaussian_surrogate: needs more rows than columns");
  }
  const Matrix z = Matrix::hstack(sample.xs, sample.ys);
  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) mean[k] += z(i, k);
  }
  for (double& v : mean) v /= static_cast<double>(n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd c(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) c(k) = z(i, k) - mean[k];
    cov.selfadjointView<Eigen::Lower>().rankUpdate(c);
  }
  cov = cov.selfadjointView<Eigen::Lower>();
  cov /= static_cast<double>(n - 1);

  for (std::size_t k = 0; k < m; ++k) {
    if (!(cov(k, k) > 0.0)) {
      throw DegenerateMarginal("fit_gaussian_surrogate: column " +
                               std::to_string(k) + " is constant");
    }
  }
  // Rank check on the correlation matrix, which is scale free.
  const Eigen::VectorXd d = cov.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd corr = d.asDiagonal() * cov * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= kRankTolerance * es.eigenvalues().maxCoeff()) {
    throw DegenerateMarginal("fit_gaussian_surrogate: covariance is rank deficient");
  }

  GaussianDependenceParams out{mean, Matrix(m1, m1), Matrix(m2, m2), Matrix(m1, m2)};
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = 0; j < m1; ++j) out.sigma_x(i, j) = cov(i, j);
    for (std::size_t j = 0; j < m2; ++j) out.sigma_xy(i, j) = cov(i, m1 + j);
  }
  for (std::size_t i = 0; i < m2; ++i) {
    for (std::size_t j = 0; j < m2; ++j) out.sigma_y(i, j) = cov(m1 + i, m1 + j);
  }
  return out;
}

}  // namespace wassdep
