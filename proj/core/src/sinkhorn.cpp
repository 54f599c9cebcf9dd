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

#include "wassdep/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wassdep {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kSinkhornBeforeNewton = 500;
constexpr int kNewtonMaxSteps = 50;
constexpr std::size_t kNewtonMaxSize = 2000;

std::vector<double> safe_log(std::span<const double> w) {
  std::vector<double> out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    out[k] = w[k] > 0.0 ? std::log(w[k]) : kNegInf;
  }
  return out;
}

class LogSinkhorn {
 public:
  LogSinkhorn(std::span<const double> a, std::span<const double> b,
              const Matrix& cost)
      : a_(a),
        b_(b),
        log_a_(safe_log(a)),
        log_b_(safe_log(b)),
        cost_(cost),
        f_(a.size(), 0.0),
        g_(b.size(), 0.0),
        scratch_(std::max(a.size(), b.size())) {}

  // One f-update; returns the L1 source-marginal violation of the plan
  // built from the potentials before the update.
  double update_f(double eps) {
    const std::size_t n = a_.size();
    const std::size_t m = b_.size();
    double violation = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double mx = kNegInf;
      for (std::size_t j = 0; j < m; ++j) {
        const double v = log_b_[j] + (g_[j] - cost_(i, j)) / eps;
        scratch_[j] = v;
        mx = std::max(mx, v);
      }
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += std::exp(scratch_[j] - mx);
      const double f_new = -eps * (mx + std::log(s));
      if (a_[i] > 0.0) {
        violation += a_[i] * std::abs(std::expm1((f_[i] - f_new) / eps));
      }
      f_[i] = f_new;
    }
    return violation;
  }

  void update_g(double eps) {
    const std::size_t n = a_.size();
    const std::size_t m = b_.size();
    for (std::size_t j = 0; j < m; ++j) {
      double mx = kNegInf;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = log_a_[i] + (f_[i] - cost_(i, j)) / eps;
        scratch_[i] = v;
        mx = std::max(mx, v);
      }
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::exp(scratch_[i] - mx);
      g_[j] = -eps * (mx + std::log(s));
    }
  }

  // Runs until the violation measured at an f-update drops to tol. On
  // return the potentials are those the violation refers to, so the plan has
  // exact target marginals and source violation <= tol.
  std::pair<double, int> solve(double eps, double tol, int max_iter) {
    double violation = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < max_iter; ++it) {
      std::vector<double> f_prev = f_;
      violation = update_f(eps);
      if (it > 0 && violation <= tol) {
        f_ = std::move(f_prev);
        break;
      }
      update_g(eps);
    }
    if (it == max_iter) {
      // Measure the state we stop in.
      std::vector<double> f_prev = f_;
      violation = update_f(eps);
      f_ = std::move(f_prev);
    }
    return {violation, it};
  }

  // Newton steps on the semi-dual J(f) = <a, f> + <b, g(f)>, with g the
  // soft c-transform of f. Converges quadratically once Sinkhorn has
  // located the basin; each accepted step must reduce the violation.
  std::pair<double, int> newton(double eps, double tol, int max_steps) {
    const std::size_t n = a_.size();
    const std::size_t m = b_.size();
    Matrix plan(n, m);
    std::vector<double> rows(n);
    auto evaluate = [&](const std::vector<double>& f) {
      f_ = f;
      update_g(eps);
      double violation = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double v =
              a_[i] > 0.0 && b_[j] > 0.0
                  ? std::exp(log_a_[i] + log_b_[j] +
                             (f_[i] + g_[j] - cost_(i, j)) / eps)
                  : 0.0;
          plan(i, j) = v;
          r += v;
        }
        rows[i] = r;
        violation += std::abs(r - a_[i]);
      }
      return violation;
    };

    double violation = evaluate(f_);
    int step = 0;
    for (; step < max_steps && violation > tol; ++step) {
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
      Eigen::VectorXd rhs(n);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        rhs(i) = eps * (a_[i] - rows[i]);
        h(i, i) = rows[i];
        scale = std::max(scale, rows[i]);
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (!(b_[j] > 0.0)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          const double pij = plan(i, j);
          if (pij == 0.0) continue;
          const double w = pij / b_[j];
          for (std::size_t k = 0; k <= i; ++k) h(i, k) -= w * plan(k, j);
        }
      }
      // The Hessian is singular along constant shifts and along zero-mass
      // rows; a tiny ridge makes the (consistent) system solvable.
      for (std::size_t i = 0; i < n; ++i) h(i, i) += 1e-12 * scale + 1e-300;
      const Eigen::VectorXd delta =
          h.selfadjointView<Eigen::Lower>().ldlt().solve(rhs);
      if (!delta.allFinite()) break;

      const std::vector<double> base = f_;
      std::vector<double> trial(n);
      double t = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = base[i] + t * delta(i);
        const double v = evaluate(trial);
        if (v < violation) {
          violation = v;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        evaluate(base);
        break;
      }
    }
    return {violation, step};
  }

  SinkhornResult result(double eps) const {
    const std::size_t n = a_.size();
    const std::size_t m = b_.size();
    SinkhornResult r;
    r.plan.mass = Matrix(n, m);
    double transport = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double lg =
            log_a_[i] + log_b_[j] + (f_[i] + g_[j] - cost_(i, j)) / eps;
        const double mass = std::exp(lg);
        r.plan.mass(i, j) = mass;
        transport += mass * cost_(i, j);
      }
    }
    r.plan.cost = transport;
    r.plan.distance = transport;
    double dual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a_[i] > 0.0) dual += a_[i] * f_[i];
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (b_[j] > 0.0) dual += b_[j] * g_[j];
    }
    r.value = dual;
    return r;
  }

 private:
  std::span<const double> a_;
  std::span<const double> b_;
  std::vector<double> log_a_;
  std::vector<double> log_b_;
  const Matrix& cost_;
  std::vector<double> f_;
  std::vector<double> g_;
  std::vector<double> scratch_;
};

}  // namespace

double median_cost(const Matrix& cost) {
  if (cost.data().empty()) return 0.0;
  std::vector<double> v = cost.data();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

SinkhornResult sinkhorn_discrepancy(std::span<const double> src_weights,
                                    std::span<const double> dst_weights,
                                    const Matrix& cost, double epsilon,
                                    const SinkhornOptions& options) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("sinkhorn: epsilon must be > 0");
  }
  if (src_weights.empty() || dst_weights.empty()) {
    throw InvalidInput("sinkhorn: empty support");
  }
  if (cost.rows() != src_weights.size() || cost.cols() != dst_weights.size()) {
    throw InvalidInput("sinkhorn: cost matrix shape does not match marginals");
  }
  double max_c = 0.0;
  for (double c : cost.data()) {
    if (!std::isfinite(c)) throw InvalidInput("sinkhorn: non-finite cost");
    max_c = std::max(max_c, std::abs(c));
  }

  LogSinkhorn solver(src_weights, dst_weights, cost);
  if (options.epsilon_scaling) {
    for (double eps = max_c; eps > 2.0 * epsilon; eps *= 0.5) {
      solver.solve(eps, std::max(options.tol, 1e-4), 100);
    }
  }
  // Plain iterations first; if they stall, polish with Newton steps and
  // finish with whatever iteration budget remains.
  const int first_budget = std::min(options.max_iter, kSinkhornBeforeNewton);
  auto [violation, iterations] = solver.solve(epsilon, options.tol, first_budget);
  if (violation > options.tol && iterations < options.max_iter &&
      src_weights.size() <= kNewtonMaxSize) {
    const auto [v, steps] = solver.newton(
        epsilon, options.tol,
        std::min(kNewtonMaxSteps, options.max_iter - iterations));
    violation = v;
    iterations += steps;
  }
  if (violation > options.tol && iterations < options.max_iter) {
    const auto [v, more] =
        solver.solve(epsilon, options.tol, options.max_iter - iterations);
    violation = v;
    iterations += more;
  }
  if (violation > options.tol) {
    throw ConvergenceError("sinkhorn: no convergence after " +
                               std::to_string(options.max_iter) +
                               " iterations (violation " +
                               std::to_string(violation) + ")",
                           violation);
  }
  SinkhornResult r = solver.result(epsilon);
  r.violation = violation;
  r.iterations = iterations;
  return r;
}

SinkhornResult sinkhorn_discrepancy(const DiscreteMeasure& src,
                                    const DiscreteMeasure& dst,
                                    const CostSpec& cost, double epsilon,
                                    const SinkhornOptions& options) {
  const Matrix c = cost_matrix(src, dst, cost);
  return sinkhorn_discrepancy(src.weights(), dst.weights(), c, epsilon, options);
}

double sinkhorn_divergence(const DiscreteMeasure& src,
                           const DiscreteMeasure& dst, const CostSpec& cost,
                           double epsilon, const SinkhornOptions& options) {
  const double pq = sinkhorn_discrepancy(src, dst, cost, epsilon, options).value;
  const double pp = sinkhorn_discrepancy(src, src, cost, epsilon, options).value;
  const double qq = sinkhorn_discrepancy(dst, dst, cost, epsilon, options).value;
  return pq - 0.5 * pp - 0.5 * qq;
}

}  // namespace wassdep
