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

// Eigen glue shared by the Gaussian routines. Internal to the core library.

#ifndef WASSDEP_SRC_LINALG_HPP
#define WASSDEP_SRC_LINALG_HPP

#include <Eigen/Dense>

#include "wassdep/types.hpp"

namespace wassdep::detail {

Eigen::MatrixXd to_eigen(const Matrix& m);
Matrix from_eigen(const Eigen::MatrixXd& m);

// Throws InvalidInput unless m is square and symmetric within a relative
// 1e-10 of its norm.
void require_symmetric(const Eigen::MatrixXd& m, const char* what);

// Eigenvalues in descending order, negatives above -tol * ||m|| clamped to 0.
// `tol` < 0 skips the indefiniteness check.
Eigen::VectorXd psd_eigenvalues(const Eigen::MatrixXd& m, double tol,
                                const char* what);

// Symmetric PSD square root via eigendecomposition with eigenvalues clamped at
// max(lambda, 0). Clamping below -tol * ||m|| is an error.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double tol, const char* what);

}  // namespace wassdep::detail

#endif  // WASSDEP_SRC_LINALG_HPP
