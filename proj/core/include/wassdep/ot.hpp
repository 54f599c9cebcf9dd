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

#ifndef WASSDEP_OT_HPP
#define WASSDEP_OT_HPP

#include <span>
#include <vector>

#include "wassdep/cost.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

// A coupling between two discrete measures and its total cost.
struct TransportPlan {
  Matrix mass;        // n x m, nonnegative
  double cost = 0.0;  // sum_ij mass_ij * C_ij
  double distance = 0.0;  // cost^(1/p) for exact plans
};

// Exact solution of the discrete transport problem for an arbitrary
// nonnegative cost matrix. Weights must be nonnegative with equal totals
// (within 1e-9).
TransportPlan solve_exact(std::span<const double> src_weights,
                          std::span<const double> dst_weights,
                          const Matrix& cost);

TransportPlan solve_exact(const DiscreteMeasure& src,
                          const DiscreteMeasure& dst, const CostSpec& spec);

// W_p between two measures on the line, from their quantile functions.
double wasserstein_1d(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                      double p);
// Same, on raw weighted values.
double wasserstein_1d(std::span<const double> src_values,
                      std::span<const double> src_weights,
                      std::span<const double> dst_values,
                      std::span<const double> dst_weights, double p);

// W_p under the exact solver, or the quantile formula when both are 1D and
// the spec is a plain Euclidean cost.
double wasserstein(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                   const CostSpec& spec);

// W_2 between N(mean1, cov1) and N(mean2, cov2). Covariances are given as
// square row-major matrices.
double gaussian_w2(std::span<const double> mean1, const Matrix& cov1,
                   std::span<const double> mean2, const Matrix& cov2);

// X-atoms with weights, plus the conditional law of the second coordinate
// at each atom.
struct TwoStageDiscreteLaw {
  DiscreteMeasure first;
  std::vector<DiscreteMeasure> conditionals;

  void validate() const;
};

// Nested distance: outer coupling of the first marginals with atom cost
// d_X(x, x')^p + W_p^p(conditional(x), conditional(x')). Returns the p-th
// root of the optimum. Only `spec.p` is read; both stages use Euclidean
// distances.
double adapted_wasserstein(const TwoStageDiscreteLaw& lhs,
                           const TwoStageDiscreteLaw& rhs,
                           const CostSpec& spec);

}  // namespace wassdep

#endif  // WASSDEP_OT_HPP
