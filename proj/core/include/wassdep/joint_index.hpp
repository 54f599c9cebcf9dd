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

// Distance between a joint law and the product of its marginals, and the
// indices built on it.

#ifndef WASSDEP_JOINT_INDEX_HPP
#define WASSDEP_JOINT_INDEX_HPP

#include <utility>
#include <vector>

#include "wassdep/cost.hpp"
#include "wassdep/empirical.hpp"
#include "wassdep/random.hpp"
#include "wassdep/report.hpp"
#include "wassdep/sinkhorn.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

double d_joint(const DiscreteMeasure& joint, const DiscreteMeasure& product,
               const CostSpec& spec);

enum class JointNormalization {
  kMinGmd,        // D / min(GMD_X, GMD_Y)^(1/p)
  kScaledMetric,  // D under d_X / GMD_X^(1/p) + d_Y / GMD_Y^(1/p)
};

struct JointIndexOptions {
  // Only p is used by kScaledMetric; kMinGmd needs lq(q = 1) or alpha.
  // Empty factors are filled with the sample's (dim_x, dim_y).
  CostSpec spec = [] {
    CostSpec s;
    s.combinator = Combinator::kLq;
    return s;
  }();
  EstimatorMode mode = EstimatorMode::kPermute;
  JointNormalization normalization = JointNormalization::kMinGmd;
};

// Empirical index. The raw ratio is reported; exceeds_one is set rather
// than clipping. Throws DegenerateMarginal when a marginal is constant.
IndexReport i_joint(const PairedSample& sample, const JointIndexOptions& options,
                    Rng& rng);
IndexReport i_joint(const PairedSample& sample, const ProductEstimate& estimate,
                    const JointIndexOptions& options);

// (|1 - sqrt(1 - rho)|, sqrt(1 - sqrt(1 - rho^2))) for a Gaussian pair under
// the l1 product metric, p = 1.
std::pair<double, double> mori_gaussian_bounds(double rho);

// Sinkhorn divergence between the joint and product estimates.
double d_joint_entropic(const ProductEstimate& estimate, double epsilon,
                        const CostSpec& cost, const SinkhornOptions& options = {});
double d_joint_entropic(const PairedSample& sample, double epsilon,
                        const CostSpec& cost, EstimatorMode mode, Rng& rng,
                        const SinkhornOptions& options = {});

// W0 / (W0 + W1) with W_i the distance from the joint law to the nearest
// member of C_i.
double marti_index(const DiscreteMeasure& joint,
                   const std::vector<DiscreteMeasure>& c0,
                   const std::vector<DiscreteMeasure>& c1, const CostSpec& spec);
// 1D defaults: C0 = permuted product, C1 = {comonotone, antimonotone}
// rearrangements of the sample.
double marti_index(const PairedSample& sample, const CostSpec& spec, Rng& rng);

// Mutual dependence of m >= 2 blocks: every block after the first is
// deranged independently to form the product estimate. A kSingle spec is
// promoted to lq(1) over the block dimensions.
double d_joint_multivariate(const std::vector<Matrix>& blocks,
                            const CostSpec& spec, Rng& rng);

// W2^2(joint, P x Q) - W2^2(product of empirical marginals, P x Q).
double reference_measure_variant(const PairedSample& sample,
                                 const DiscreteMeasure& ref_x,
                                 const DiscreteMeasure& ref_y);

// Product of two laws on the concatenated space.
DiscreteMeasure product_measure(const DiscreteMeasure& first,
                                const DiscreteMeasure& second);

}  // namespace wassdep

#endif  // WASSDEP_JOINT_INDEX_HPP
