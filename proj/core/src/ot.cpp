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

#include "wassdep/ot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "linalg.hpp"
#include "wassdep/network_simplex.hpp"

namespace wassdep {
namespace {

constexpr double kMarginalTolerance = 1e-9;

double pow_p(double d, double p) {
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

std::vector<std::size_t> sorted_order(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  return idx;
}

}  // namespace

TransportPlan solve_exact(std::span<const double> src_weights,
                          std::span<const double> dst_weights,
                          const Matrix& cost) {
  if (src_weights.empty() || dst_weights.empty()) {
    throw InvalidInput("solve_exact: empty support");
  }
  double total_src = 0.0;
  double total_dst = 0.0;
  for (double w : src_weights) {
    if (!(w >= 0.0)) throw InvalidInput("solve_exact: negative source weight");
    total_src += w;
  }
  for (double w : dst_weights) {
    if (!(w >= 0.0)) throw InvalidInput("solve_exact: negative target weight");
    total_dst += w;
  }
  if (std::abs(total_src - total_dst) > kMarginalTolerance) {
    throw InvalidInput("solve_exact: infeasible marginals (masses " +
                       std::to_string(total_src) + " and " +
                       std::to_string(total_dst) + ")");
  }
  for (double c : cost.data()) {
    if (!std::isfinite(c)) throw InvalidInput("solve_exact: non-finite cost");
  }

  NetworkSimplex solver(src_weights, dst_weights, cost);
  const auto status = solver.run();
  if (status != NetworkSimplex::Status::kOptimal) {
    throw std::logic_error("solve_exact: network simplex failed to reach optimum");
  }

  TransportPlan plan;
  plan.mass = Matrix(src_weights.size(), dst_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < src_weights.size(); ++i) {
    for (std::size_t j = 0; j < dst_weights.size(); ++j) {
      const double f = std::max(0.0, solver.flow(i, j));
      plan.mass(i, j) = f;
      total += f * cost(i, j);
    }
  }
  plan.cost = std::max(0.0, total);
  plan.distance = plan.cost;
  return plan;
}

TransportPlan solve_exact(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                          const CostSpec& spec) {
  const Matrix c = cost_matrix(src, dst, spec);
  TransportPlan plan = solve_exact(src.weights(), dst.weights(), c);
  plan.distance = spec.p == 1.0 ? plan.cost : std::pow(plan.cost, 1.0 / spec.p);
  return plan;
}

double wasserstein_1d(std::span<const double> src_values,
                      std::span<const double> src_weights,
                      std::span<const double> dst_values,
                      std::span<const double> dst_weights, double p) {
  if (src_values.empty() || dst_values.empty()) {
    throw InvalidInput("wasserstein_1d: empty support");
  }
  if (!(p >= 1.0)) throw InvalidInput("wasserstein_1d: p must be >= 1");
  const auto is = sorted_order(src_values);
  const auto js = sorted_order(dst_values);

  // Walk both quantile functions along t in [0, 1]; ties simply stack mass.
  std::size_t a = 0;
  std::size_t b = 0;
  double rem_a = src_weights[is[0]];
  double rem_b = dst_weights[js[0]];
  double acc = 0.0;
  while (a < is.size() && b < js.size()) {
    const double d = std::abs(src_values[is[a]] - dst_values[js[b]]);
    if (rem_a < rem_b) {
      acc += rem_a * pow_p(d, p);
      rem_b -= rem_a;
      if (++a < is.size()) rem_a = src_weights[is[a]];
    } else {
      acc += rem_b * pow_p(d, p);
      rem_a -= rem_b;
      if (++b < js.size()) rem_b = dst_weights[js[b]];
    }
  }
  acc = std::max(acc, 0.0);
  return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

double wasserstein_1d(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                      double p) {
  if (src.dim() != 1 || dst.dim() != 1) {
    throw InvalidInput("wasserstein_1d: both measures must be one-dimensional");
  }
  return wasserstein_1d(src.points().data(), src.weights(), dst.points().data(),
                        dst.weights(), p);
}

double wasserstein(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                   const CostSpec& spec) {
  if (src.dim() == 1 && dst.dim() == 1 &&
      spec.combinator == Combinator::kSingle) {
    return wasserstein_1d(src, dst, spec.p);
  }
  return solve_exact(src, dst, spec).distance;
}

double gaussian_w2(std::span<const double> mean1, const Matrix& cov1,
                   std::span<const double> mean2, const Matrix& cov2) {
  const std::size_t d = mean1.size();
  if (mean2.size() != d || cov1.rows() != d || cov1.cols() != d ||
      cov2.rows() != d || cov2.cols() != d) {
    throw InvalidInput("gaussian_w2: dimension mismatch");
  }
  const Eigen::MatrixXd s1 = detail::to_eigen(cov1);
  const Eigen::MatrixXd s2 = detail::to_eigen(cov2);
  detail::require_symmetric(s1, "gaussian_w2");
  detail::require_symmetric(s2, "gaussian_w2");
  detail::psd_eigenvalues(s2, 1e-8, "gaussian_w2");
  const Eigen::MatrixXd root1 = detail::psd_sqrt(s1, 1e-8, "gaussian_w2");
  const Eigen::MatrixXd cross = root1 * s2 * root1;
  // The product is PSD by construction; rounding may leave tiny negatives.
  const Eigen::MatrixXd cross_root = detail::psd_sqrt(cross, -1.0, "gaussian_w2");

  double mean_term = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double diff = mean1[k] - mean2[k];
    mean_term += diff * diff;
  }
  const double trace = s1.trace() + s2.trace() - 2.0 * cross_root.trace();
  return std::sqrt(std::max(0.0, mean_term + trace));
}

void TwoStageDiscreteLaw::validate() const {
  if (conditionals.size() != first.size()) {
    throw InvalidInput("two-stage law: one conditional per x-atom required");
  }
  for (const auto& c : conditionals) {
    if (c.size() == 0) throw InvalidInput("two-stage law: empty conditional");
    if (c.dim() != conditionals.front().dim()) {
      throw InvalidInput("two-stage law: conditional dimensions differ");
    }
  }
}

double adapted_wasserstein(const TwoStageDiscreteLaw& lhs,
                           const TwoStageDiscreteLaw& rhs,
                           const CostSpec& spec) {
  lhs.validate();
  rhs.validate();
  if (lhs.first.dim() != rhs.first.dim() ||
      lhs.conditionals.front().dim() != rhs.conditionals.front().dim()) {
    throw InvalidInput("adapted_wasserstein: dimension mismatch");
  }
  const CostSpec inner = CostSpec::single(spec.p);
  Matrix c(lhs.first.size(), rhs.first.size());
  for (std::size_t a = 0; a < lhs.first.size(); ++a) {
    for (std::size_t b = 0; b < rhs.first.size(); ++b) {
      const double dx = euclidean(lhs.first.point(a), rhs.first.point(b));
      const double wy =
          wasserstein(lhs.conditionals[a], rhs.conditionals[b], inner);
      c(a, b) = pow_p(dx, spec.p) + pow_p(wy, spec.p);
    }
  }
  const TransportPlan plan =
      solve_exact(lhs.first.weights(), rhs.first.weights(), c);
  return spec.p == 1.0 ? plan.cost : std::pow(plan.cost, 1.0 / spec.p);
}

}  // namespace wassdep
