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

#ifndef WASSDEP_SINKHORN_HPP
#define WASSDEP_SINKHORN_HPP

#include <span>

#include "wassdep/cost.hpp"
#include "wassdep/ot.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

struct SinkhornOptions {
  double tol = 1e-9;     // L1 violation of the source marginal
  int max_iter = 10000;  // iterations at the target epsilon
  // Anneal epsilon from the largest cost down to the target before the final
  // stage. Only changes the starting potentials, not the fixed point.
  bool epsilon_scaling = true;
};

struct SinkhornResult {
  TransportPlan plan;   // plan.cost is the transport part sum(mass * C)
  double value = 0.0;   // cost + eps * KL(plan | src x dst)
  double violation = 0.0;
  int iterations = 0;
};

// Entropic discrepancy W_c^(eps) by log-domain Sinkhorn iterations.
// Throws ConvergenceError (carrying the achieved violation) when the
// tolerance is not met within max_iter.
SinkhornResult sinkhorn_discrepancy(std::span<const double> src_weights,
                                    std::span<const double> dst_weights,
                                    const Matrix& cost, double epsilon,
                                    const SinkhornOptions& options = {});

SinkhornResult sinkhorn_discrepancy(const DiscreteMeasure& src,
                                    const DiscreteMeasure& dst,
                                    const CostSpec& cost, double epsilon,
                                    const SinkhornOptions& options = {});

// Debiased S^(eps)(P, Q) = W(P, Q) - W(P, P) / 2 - W(Q, Q) / 2.
double sinkhorn_divergence(const DiscreteMeasure& src,
                           const DiscreteMeasure& dst, const CostSpec& cost,
                           double epsilon, const SinkhornOptions& options = {});

// Median entry of a cost matrix, the natural unit for epsilon.
double median_cost(const Matrix& cost);

}  // namespace wassdep

#endif  // WASSDEP_SINKHORN_HPP
