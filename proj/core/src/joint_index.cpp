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

#include "wassdep/joint_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

CostSpec with_factors(CostSpec spec, std::size_t dim_x, std::size_t dim_y) {
  if (spec.combinator != Combinator::kSingle && spec.factors.empty()) {
    spec.factors = {dim_x, dim_y};
  }
  spec.validate();
  return spec;
}

double root_p(double v, double p) { return p == 1.0 ? v : std::pow(v, 1.0 / p); }

std::vector<std::size_t> sorted_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

}  // namespace

double d_joint(const DiscreteMeasure& joint, const DiscreteMeasure& product,
               const CostSpec& spec) {
  if (joint.dim() != product.dim()) {
    throw InvalidInput("d_joint: joint and product live on different spaces");
  }
  return solve_exact(joint, product, spec).distance;
}

IndexReport i_joint(const PairedSample& sample, const ProductEstimate& estimate,
                    const JointIndexOptions& options) {
  sample.validate();
  const std::size_t dx = sample.dim_x();
  const std::size_t dy = sample.dim_y();
  const double p = options.spec.p;
  const double gx = gmd_ustat(sample.xs, p);
  const double gy = gmd_ustat(sample.ys, p);
  if (!(gx > 0.0)) throw DegenerateMarginal("i_joint: x marginal is constant");
  if (!(gy > 0.0)) throw DegenerateMarginal("i_joint: y marginal is constant");

  IndexReport r;
  r.index = "joint";
  r.estimator = to_string(options.mode);
  r.p = p;
  r.seed = sample.seed;
  r.n = sample.size();
  if (estimate.degenerate) {
    r.warnings.push_back("identity permutation: product estimate equals joint");
  }

  if (options.normalization == JointNormalization::kScaledMetric) {
    const CostSpec spec =
        CostSpec::scaled(root_p(gx, p), root_p(gy, p), p, dx, dy);
    r.variant = "scaled_metric";
    r.numerator = d_joint(estimate.joint, estimate.product, spec);
    r.denominator = 1.0;
  } else {
    const CostSpec spec = with_factors(options.spec, dx, dy);
    const bool l1 = spec.combinator == Combinator::kLq && spec.q == 1.0 &&
                    spec.factors.size() == 2;
    if (!l1 && spec.combinator != Combinator::kAlpha) {
      throw InvalidInput(
          "i_joint: the mean-discrepancy bound needs an lq(q = 1) or alpha "
          "product metric over (x, y)");
    }
    double bound = std::min(gx, gy);
    if (spec.combinator == Combinator::kAlpha) {
      bound = std::min(std::pow(spec.alpha, p) * gx, gy);
      r.alpha = spec.alpha;
    } else {
      r.q = spec.q;
    }
    r.variant = "min_gmd";
    r.numerator = d_joint(estimate.joint, estimate.product, spec);
    r.denominator = root_p(bound, p);
  }
  r.value = r.numerator / r.denominator;
  r.exceeds_one = r.value > 1.0;
  return r;
}

IndexReport i_joint(const PairedSample& sample, const JointIndexOptions& options,
                    Rng& rng) {
  const ProductEstimate est = product_estimator(sample, options.mode, rng);
  return i_joint(sample, est, options);
}

std::pair<double, double> mori_gaussian_bounds(double rho) {
  if (!(std::abs(rho) <= 1.0)) {
    throw InvalidInput("mori_gaussian_bounds: |rho| must be <= 1");
  }
  const double lower = std::abs(1.0 - std::sqrt(1.0 - rho));
  const double upper = std::sqrt(1.0 - std::sqrt(1.0 - rho * rho));
  return {lower, upper};
}

double d_joint_entropic(const ProductEstimate& estimate, double epsilon,
                        const CostSpec& cost, const SinkhornOptions& options) {
  return sinkhorn_divergence(estimate.joint, estimate.product, cost, epsilon,
                             options);
}

double d_joint_entropic(const PairedSample& sample, double epsilon,
                        const CostSpec& cost, EstimatorMode mode, Rng& rng,
                        const SinkhornOptions& options) {
  const ProductEstimate est = product_estimator(sample, mode, rng);
  return d_joint_entropic(
      est, epsilon, with_factors(cost, sample.dim_x(), sample.dim_y()), options);
}

double marti_index(const DiscreteMeasure& joint,
                   const std::vector<DiscreteMeasure>& c0,
                   const std::vector<DiscreteMeasure>& c1, const CostSpec& spec) {
  if (c0.empty() || c1.empty()) {
    throw InvalidInput("marti_index: reference sets must be nonempty");
  }
  auto nearest = [&](const std::vector<DiscreteMeasure>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : set) best = std::min(best, wasserstein(joint, c, spec));
    return best;
  };
  const double w0 = nearest(c0);
  const double w1 = nearest(c1);
  if (w0 + w1 <= 0.0) {
    throw InvalidInput("marti_index: the joint law lies in both reference sets");
  }
  return w0 / (w0 + w1);
}

double marti_index(const PairedSample& sample, const CostSpec& spec, Rng& rng) {
  sample.validate();
  if (sample.dim_x() != 1 || sample.dim_y() != 1) {
    throw InvalidInput("marti_index: default reference sets need 1D x and y");
  }
  const std::size_t n = sample.size();
  const auto ox = sorted_order(sample.xs.data());
  const auto oy = sorted_order(sample.ys.data());
  Matrix co(n, 2);
  Matrix anti(n, 2);
  for (std::size_t k = 0; k < n; ++k) {
    co(k, 0) = sample.xs(ox[k], 0);
    co(k, 1) = sample.ys(oy[k], 0);
    anti(k, 0) = sample.xs(ox[k], 0);
    anti(k, 1) = sample.ys(oy[n - 1 - k], 0);
  }
  const ProductEstimate est =
      product_estimator(sample, EstimatorMode::kPermute, rng);
  const CostSpec s = with_factors(spec, 1, 1);
  return marti_index(est.joint, {est.product},
                     {DiscreteMeasure::uniform(co), DiscreteMeasure::uniform(anti)},
                     s);
}

double d_joint_multivariate(const std::vector<Matrix>& blocks,
                            const CostSpec& spec, Rng& rng) {
  if (blocks.size() < 2) {
    throw InvalidInput("d_joint_multivariate: needs at least 2 blocks");
  }
  const std::size_t n = blocks.front().rows();
  std::vector<std::size_t> dims;
  for (const auto& b : blocks) {
    if (b.rows() != n) throw InvalidInput("d_joint_multivariate: row counts differ");
    if (b.cols() == 0) throw InvalidInput("d_joint_multivariate: empty block");
    dims.push_back(b.cols());
  }
  if (n < 2) throw InvalidInput("d_joint_multivariate: needs at least 2 rows");

  CostSpec s = spec;
  if (s.combinator == Combinator::kSingle) {
    s = CostSpec::lq(1.0, spec.p, dims);
  } else if (s.factors.empty()) {
    s.factors = dims;
  }
  s.validate();

  Matrix joint = blocks.front();
  Matrix product = blocks.front();
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const auto sigma = random_derangement(n, rng);
    joint = Matrix::hstack(joint, blocks[b]);
    product = Matrix::hstack(product, blocks[b].select_rows(sigma));
  }
  return d_joint(DiscreteMeasure::uniform(std::move(joint)),
                 DiscreteMeasure::uniform(std::move(product)), s);
}

DiscreteMeasure product_measure(const DiscreteMeasure& first,
                                const DiscreteMeasure& second) {
  const std::size_t n = first.size();
  const std::size_t m = second.size();
  Matrix pts(n * m, first.dim() + second.dim());
  std::vector<double> w(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto row = pts.row(i * m + j);
      std::copy(first.point(i).begin(), first.point(i).end(), row.begin());
      std::copy(second.point(j).begin(), second.point(j).end(),
                row.begin() + static_cast<std::ptrdiff_t>(first.dim()));
      w[i * m + j] = first.weight(i) * second.weight(j);
    }
  }
  return {std::move(pts), std::move(w)};
}

double reference_measure_variant(const PairedSample& sample,
                                 const DiscreteMeasure& ref_x,
                                 const DiscreteMeasure& ref_y) {
  sample.validate();
  if (ref_x.dim() != sample.dim_x() || ref_y.dim() != sample.dim_y()) {
    throw InvalidInput("reference_measure_variant: reference dimensions differ");
  }
  const DiscreteMeasure reference = product_measure(ref_x, ref_y);
  const DiscreteMeasure marginals =
      product_measure(to_measure(sample.xs), to_measure(sample.ys));
  const CostSpec spec = CostSpec::single(2.0);
  return solve_exact(joint_measure(sample), reference, spec).cost -
         solve_exact(marginals, reference, spec).cost;
}

}  // namespace wassdep
