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

// Average distance between conditional laws of Y given X and the law of Y.

#ifndef WASSDEP_CONDITIONAL_INDEX_HPP
#define WASSDEP_CONDITIONAL_INDEX_HPP

#include "wassdep/cost.hpp"
#include "wassdep/empirical.hpp"
#include "wassdep/report.hpp"
#include "wassdep/sinkhorn.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

// (sum_g w_g W_p(law_g, marginal)^p)^(1/p). The marginal must equal the
// weight-merged family within 1e-9.
double d_conditional(const ConditionalFamily& family,
                     const DiscreteMeasure& marginal, double p);
// Same value through per-group quantile integrals; y must be 1D.
double d_conditional_1d(const ConditionalFamily& family,
                        const DiscreteMeasure& marginal, double p);

// value = D^p / U^p with U^p the mean discrepancy of Y: the plug-in
// (with replacement) version for exact grouping, the U-statistic for bins.
// numerator and denominator hold D^p and U^p.
IndexReport i_conditional(const PairedSample& sample,
                          const PartitionOptions& partition_options, double p);

// 1 - sqrt(1 - rho^2): the p = 2 index of a standard Gaussian pair.
double gaussian_conditional_index(double rho);

// sum_g w_g W_c^(eps)(law_g, marginal). Positive even under independence.
double d_conditional_entropic(const ConditionalFamily& family,
                             const DiscreteMeasure& marginal, double epsilon,
                             const CostSpec& cost,
                             const SinkhornOptions& options = {});

// E c(Y, Y') for Y, Y' independent draws from `law`.
double expected_pair_cost(const DiscreteMeasure& law, const CostSpec& cost);

// max over groups g != h with distinct representatives of
// W_p(law_g, law_h) / |x_g - x_h|.
double w_lipschitz_estimate(const ConditionalFamily& family, double p = 1.0);

}  // namespace wassdep

#endif  // WASSDEP_CONDITIONAL_INDEX_HPP
