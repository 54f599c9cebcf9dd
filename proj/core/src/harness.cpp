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

#include "wassdep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "linalg.hpp"
#include "wassdep/concordance.hpp"
#include "wassdep/conditional_index.hpp"
#include "wassdep/gaussian_index.hpp"
#include "wassdep/joint_index.hpp"
#include "wassdep/ot.hpp"
#include "wassdep/sinkhorn.hpp"

namespace wassdep {
namespace {

constexpr int kMinPermutations = 19;
constexpr double kInequalitySlack = 1e-8;
constexpr double kLipschitzSlack = 1e-9;
constexpr int kBootstrapDraws = 200;
constexpr int kMaxRedraws = 100;

// Runs body(i) for i < count on harness_threads() workers. The first
// exception thrown by any item is rethrown.
template <class Body>
void parallel_for(std::size_t count, const Body& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(harness_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CostSpec l1_spec(double p, std::size_t dx, std::size_t dy) {
  return CostSpec::lq(1.0, p, {dx, dy});
}

bool has_ties(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

Eigen::MatrixXd checked_cov(const Matrix& m, const char* what) {
  const Eigen::MatrixXd e = detail::to_eigen(m);
  detail::require_symmetric(e, what);
  detail::psd_eigenvalues(e, 1e-8, what);
  return e;
}

}  // namespace

int harness_threads() {
  const char* env = std::getenv("WASSDEP_THREADS");
  if (env == nullptr) return 1;
  const int v = std::atoi(env);
  return v > 0 ? v : 1;
}

StatisticFn named_statistic(const std::string& name,
                            const StatisticOptions& options) {
  if (name == "d_joint") {
    return [options](const PairedSample& s, Rng& rng) {
      const ProductEstimate est = product_estimator(s, options.mode, rng);
      return d_joint(est.joint, est.product,
                     l1_spec(options.p, s.dim_x(), s.dim_y()));
    };
  }
  if (name == "i_joint") {
    return [options](const PairedSample& s, Rng& rng) {
      JointIndexOptions jo;
      jo.spec.p = options.p;
      jo.mode = options.mode;
      return i_joint(s, jo, rng).value;
    };
  }
  if (name == "i_conditional") {
    return [options](const PairedSample& s, Rng&) {
      return i_conditional(s, options.partition, options.p).value;
    };
  }
  if (name == "gaussian") {
    return [](const PairedSample& s, Rng&) {
      return i_gaussian(fit_gaussian_surrogate(s));
    };
  }
  if (name == "concordance") {
    return [](const PairedSample& s, Rng&) { return concordance_index(s).value; };
  }
  throw InvalidInput("unknown statistic '" + name + "'");
}

std::vector<std::string> statistic_names() {
  return {"d_joint", "i_joint", "i_conditional", "gaussian", "concordance"};
}

PermutationTestResult permutation_test(const PairedSample& sample,
                                       const StatisticFn& statistic, int B,
                                       std::uint64_t seed) {
  if (B < kMinPermutations) {
    throw InvalidInput("permutation_test: needs at least 19 permutations");
  }
  sample.validate();
  PermutationTestResult r;
  r.permutations = B;
  r.seed = seed;
  {
    Rng rng(derive_seed(seed, 0));
    r.statistic = statistic(sample, rng);
  }
  r.null_statistics.assign(static_cast<std::size_t>(B), 0.0);
  parallel_for(static_cast<std::size_t>(B), [&](std::size_t b) {
    Rng rng(derive_seed(seed, b + 1));
    const auto perm = random_permutation(sample.size(), rng);
    PairedSample shuffled{sample.xs, sample.ys.select_rows(perm), sample.seed};
    r.null_statistics[b] = statistic(shuffled, rng);
  });
  const auto exceed = std::count_if(
      r.null_statistics.begin(), r.null_statistics.end(),
      [&](double t) { return t >= r.statistic; });
  r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(B + 1);
  return r;
}

PermutationTestResult permutation_test(const PairedSample& sample,
                                       const std::string& statistic, int B,
                                       Rng& rng,
                                       const StatisticOptions& options) {
  const StatisticFn fn = named_statistic(statistic, options);
  return permutation_test(sample, fn, B, rng());
}

double ks_uniform_statistic(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("ks_uniform: empty sample");
  std::vector<double> u(values.begin(), values.end());
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double f = std::clamp(u[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_uniform_pvalue(std::span<const double> values) {
  const double d = ks_uniform_statistic(values);
  const double sn = std::sqrt(static_cast<double>(values.size()));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda <= 0.0) return 1.0;
  // Two series for the Kolmogorov tail; each converges fast on its side.
  if (lambda < 1.18) {
    const double pi = std::numbers::pi;
    const double t = std::exp(-pi * pi / (8.0 * lambda * lambda));
    const double cdf = std::sqrt(2.0 * pi) / lambda *
                       (t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  const double t = std::exp(-2.0 * lambda * lambda);
  const double q = 2.0 * (t - std::pow(t, 4) + std::pow(t, 9) - std::pow(t, 16));
  return std::clamp(q, 0.0, 1.0);
}

ContaminationReport contamination_check(
    const PairedSample& sample, std::span<const double> epsilon_grid,
    double p, const std::optional<PairedSample>& contaminant) {
  sample.validate();
  const std::size_t dx = sample.dim_x();
  const std::size_t dy = sample.dim_y();
  const CostSpec spec = l1_spec(p, dx, dy);
  const DiscreteMeasure joint = joint_measure(sample);
  const DiscreteMeasure mx = to_measure(sample.xs);
  const DiscreteMeasure my = to_measure(sample.ys);
  const DiscreteMeasure product = product_measure(mx, my);

  DiscreteMeasure other = product;
  if (contaminant) {
    contaminant->validate();
    if (contaminant->dim_x() != dx || contaminant->dim_y() != dy ||
        !same_law(to_measure(contaminant->xs), mx, 1e-12) ||
        !same_law(to_measure(contaminant->ys), my, 1e-12)) {
      throw InvalidInput("contamination_check: contaminant marginals differ");
    }
    other = joint_measure(*contaminant);
  }

  // Every mixture has the same marginals, hence the same product law.
  ContaminationReport r;
  r.p = p;
  r.base = solve_exact(joint, product, spec).cost;
  r.contaminant = contaminant ? solve_exact(other, product, spec).cost : 0.0;
  r.passed = true;
  for (double eps : epsilon_grid) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw InvalidInput("contamination_check: epsilon must lie in [0, 1]");
    }
    ContaminationRow row;
    row.epsilon = eps;
    if (eps == 0.0) {
      row.lhs = r.base;
    } else if (eps == 1.0) {
      row.lhs = r.contaminant;
    } else {
      row.lhs = solve_exact(mix(joint, other, eps), product, spec).cost;
    }
    row.rhs = (1.0 - eps) * r.base + eps * r.contaminant;
    row.holds = row.lhs <= row.rhs + kInequalitySlack;
    r.passed = r.passed && row.holds;
    r.rows.push_back(row);
  }
  return r;
}

LipschitzReport gmd_lipschitz_check(
    const std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>>& pairs,
    double p) {
  LipschitzReport r;
  r.p = p;
  r.passed = true;
  const CostSpec spec = CostSpec::single(p);
  for (const auto& [a, b] : pairs) {
    LipschitzRow row;
    const double ga = std::pow(gmd_measure(a, p), 1.0 / p);
    const double gb = std::pow(gmd_measure(b, p), 1.0 / p);
    row.lhs = std::abs(ga - gb);
    row.rhs = 2.0 * wasserstein(a, b, spec);
    row.holds = row.lhs <= row.rhs + kLipschitzSlack;
    r.passed = r.passed && row.holds;
    r.rows.push_back(row);
  }
  return r;
}

std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>> random_measure_pairs(
    std::size_t count, std::size_t n, std::size_t dim, Rng& rng) {
  auto draw = [&] {
    Matrix pts(n, dim);
    for (double& v : pts.data()) v = uniform01(rng);
    std::vector<double> w(n);
    for (double& v : w) v = 0.1 + uniform01(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= total;
    return DiscreteMeasure(std::move(pts), std::move(w));
  };
  std::vector<std::pair<DiscreteMeasure, DiscreteMeasure>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    DiscreteMeasure a = draw();
    DiscreteMeasure b = draw();
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

DiscontinuityReport discontinuity_report(const PairedSample& sample, double p) {
  sample.validate();
  if (sample.dim_x() != 1 || sample.dim_y() != 1) {
    throw InvalidInput("discontinuity_report: x and y must be one-dimensional");
  }
  const std::vector<double> x = sample.xs.col(0);
  const std::vector<double> y = sample.ys.col(0);
  if (has_ties(x)) throw InvalidInput("discontinuity_report: x has ties");
  const std::size_t n = sample.size();

  DiscontinuityReport r;
  r.n = n;
  r.p = p;
  r.exact_index = i_conditional(sample, {PartitionMode::kExact, 0, false}, p).value;
  const IndexReport binned =
      i_conditional(sample, {PartitionMode::kBins, 0, false}, p);
  r.binned_index = binned.value;
  r.bins = binned.bins.value_or(0);

  // y snapped to the centres of `grid` equal cells; x keeps all n atoms.
  r.grid = std::max(2, default_bins_per_axis(n, 1));
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it;
  const double width = std::max(*hi_it - lo, 1e-300);
  std::map<int, double> levels;
  std::vector<double> coarse(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int cell = std::min(
        r.grid - 1, static_cast<int>((y[i] - lo) / width * r.grid));
    coarse[i] = lo + (cell + 0.5) * width / r.grid;
    levels[cell] += 1.0 / static_cast<double>(n);
  }
  Matrix level_pts(levels.size(), 1);
  std::vector<double> level_w;
  std::size_t k = 0;
  for (const auto& [cell, w] : levels) {
    level_pts(k++, 0) = lo + (cell + 0.5) * width / r.grid;
    level_w.push_back(w);
  }
  const DiscreteMeasure y_marginal(std::move(level_pts), std::move(level_w));

  TwoStageDiscreteLaw empirical{to_measure(sample.xs), {}};
  TwoStageDiscreteLaw product{to_measure(sample.xs), {}};
  for (std::size_t i = 0; i < n; ++i) {
    empirical.conditionals.push_back(DiscreteMeasure::dirac({coarse[i]}));
    product.conditionals.push_back(y_marginal);
  }
  r.adapted_distance = adapted_wasserstein(empirical, product, CostSpec::single(p));
  return r;
}

DiscontinuityReport discontinuity_demo(std::size_t n, Rng& rng, double p) {
  if (n < 2) throw InvalidInput("discontinuity_demo: needs n >= 2");
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = uniform01(rng);
      y[i] = uniform01(rng);
    }
    if (has_ties(x)) continue;
    return discontinuity_report(PairedSample::from_columns(x, y), p);
  }
  throw InvalidInput("discontinuity_demo: could not draw x without ties");
}

double gaussian_entropic_cost(const Matrix& a, const Matrix& b, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("gaussian_entropic_cost: epsilon must be > 0");
  if (a.rows() != b.rows()) throw InvalidInput("gaussian_entropic_cost: dimension mismatch");
  const Eigen::MatrixXd ea = checked_cov(a, "gaussian_entropic_cost");
  const Eigen::MatrixXd eb = checked_cov(b, "gaussian_entropic_cost");
  const Eigen::Index d = ea.rows();
  // Closed form with sigma^2 = eps / 2 (the plan pays eps * KL).
  const double s2 = 0.5 * epsilon;
  const Eigen::MatrixXd ra = detail::psd_sqrt(ea, 1e-8, "gaussian_entropic_cost");
  const Eigen::MatrixXd inner = 4.0 * ra * eb * ra;
  const Eigen::MatrixXd sym = 0.5 * (inner + inner.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  double trace_d = 0.0;
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double ds = std::sqrt(std::max(es.eigenvalues()(j), 0.0) + s2 * s2);
    trace_d += ds;
    log_det += std::log(ds + s2);
  }
  return ea.trace() + eb.trace() - trace_d +
         static_cast<double>(d) * s2 * (1.0 - std::log(2.0 * s2)) + s2 * log_det;
}

double gaussian_sinkhorn_divergence(const Matrix& a, const Matrix& b,
                                    double epsilon) {
  return gaussian_entropic_cost(a, b, epsilon) -
         0.5 * gaussian_entropic_cost(a, a, epsilon) -
         0.5 * gaussian_entropic_cost(b, b, epsilon);
}

namespace {

Matrix bivariate_cov(double rho) { return Matrix::from_rows({{1.0, rho}, {rho, 1.0}}); }

PairedSample gaussian_sample(std::size_t n, double rho, Rng& rng) {
  std::vector<double> x(n);
  std::vector<double> y(n);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = standard_normal(rng);
    y[i] = rho * x[i] + c * standard_normal(rng);
  }
  return PairedSample::from_columns(x, y);
}

}  // namespace

RateCase w1_shift_case() {
  RateCase c;
  c.name = "w1_shift";
  c.truth = 0.5;
  c.band_lo = -0.65;
  c.band_hi = -0.35;
  c.estimate = [](std::size_t n, Rng& rng) {
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = uniform01(rng);
      b[i] = 0.5 + uniform01(rng);
    }
    const std::vector<double> w(n, 1.0 / static_cast<double>(n));
    return wasserstein_1d(a, w, b, w, 1.0);
  };
  return c;
}

RateCase joint_w2_case(double rho) {
  if (!(std::abs(rho) < 1.0)) throw InvalidInput("joint_w2_case: |rho| must be < 1");
  RateCase c;
  c.name = "joint_w2";
  const std::vector<double> zero{0.0, 0.0};
  c.truth = gaussian_w2(zero, bivariate_cov(rho), zero, bivariate_cov(0.0));
  c.band_lo = -0.75;
  c.band_hi = -0.30;
  c.estimate = [rho](std::size_t n, Rng& rng) {
    const PairedSample s = gaussian_sample(n, rho, rng);
    const ProductEstimate est = product_estimator(s, EstimatorMode::kPermute, rng);
    return d_joint(est.joint, est.product, CostSpec::single(2.0));
  };
  return c;
}

RateCase entropic_joint_case(double rho, double epsilon) {
  if (!(std::abs(rho) < 1.0)) {
    throw InvalidInput("entropic_joint_case: |rho| must be < 1");
  }
  RateCase c;
  c.name = "entropic_joint";
  c.truth = gaussian_sinkhorn_divergence(bivariate_cov(rho), bivariate_cov(0.0),
                                         epsilon);
  c.band_lo = -0.75;
  c.band_hi = -0.25;
  c.estimate = [rho, epsilon](std::size_t n, Rng& rng) {
    const PairedSample s = gaussian_sample(n, rho, rng);
    return d_joint_entropic(s, epsilon, CostSpec::single(2.0),
                            EstimatorMode::kPermute, rng);
  };
  return c;
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("ols_slope: needs two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw InvalidInput("ols_slope: x values are all equal");
  return sxy / sxx;
}

RateReport rate_experiment(const RateCase& rate_case,
                           const std::vector<std::size_t>& n_grid,
                           int replicates, std::uint64_t seed) {
  std::vector<std::size_t> distinct(n_grid);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2 || distinct.front() < 2) {
    throw InvalidInput("rate_experiment: needs two distinct sizes >= 2");
  }
  if (replicates < 2) throw InvalidInput("rate_experiment: needs >= 2 replicates");
  if (!rate_case.estimate) throw InvalidInput("rate_experiment: no estimator");

  const std::size_t g = n_grid.size();
  const std::size_t reps = static_cast<std::size_t>(replicates);
  std::vector<double> err(g * reps);
  parallel_for(g * reps, [&](std::size_t item) {
    const std::size_t k = item / reps;
    const std::size_t r = item % reps;
    Rng rng(derive_seed(derive_seed(seed, k), r));
    err[item] = std::abs(rate_case.estimate(n_grid[k], rng) - rate_case.truth);
  });

  RateReport out;
  out.name = rate_case.name;
  out.n_grid = n_grid;
  out.replicates = replicates;
  out.seed = seed;
  out.band_lo = rate_case.band_lo;
  out.band_hi = rate_case.band_hi;
  std::vector<double> log_n(g);
  std::vector<double> log_e(g);
  for (std::size_t k = 0; k < g; ++k) {
    const double mean =
        std::accumulate(err.begin() + static_cast<std::ptrdiff_t>(k * reps),
                        err.begin() + static_cast<std::ptrdiff_t>((k + 1) * reps),
                        0.0) /
        static_cast<double>(reps);
    out.mean_abs_error.push_back(mean);
    log_n[k] = std::log(static_cast<double>(n_grid[k]));
    log_e[k] = std::log(std::max(mean, 1e-300));
  }
  out.slope = ols_slope(log_n, log_e);

  Rng boot(derive_seed(seed, g));
  std::vector<double> slopes;
  slopes.reserve(kBootstrapDraws);
  std::vector<double> resampled(g);
  for (int b = 0; b < kBootstrapDraws; ++b) {
    for (std::size_t k = 0; k < g; ++k) {
      double acc = 0.0;
      for (std::size_t r = 0; r < reps; ++r) acc += err[k * reps + uniform_index(boot, reps)];
      resampled[k] = std::log(std::max(acc / static_cast<double>(reps), 1e-300));
    }
    slopes.push_back(ols_slope(log_n, resampled));
  }
  std::sort(slopes.begin(), slopes.end());
  out.ci_lo = slopes[static_cast<std::size_t>(0.025 * (kBootstrapDraws - 1))];
  out.ci_hi = slopes[static_cast<std::size_t>(0.975 * (kBootstrapDraws - 1))];
  out.in_band = out.slope >= out.band_lo && out.slope <= out.band_hi;
  return out;
}

std::vector<Figure1Row> figure1_table(std::span<const double> grid) {
  std::vector<Figure1Row> rows;
  rows.reserve(grid.size());
  for (double rho : grid) {
    if (!(std::abs(rho) <= 1.0)) throw InvalidInput("figure1_table: |rho| must be <= 1");
    const auto [lower, upper] = mori_gaussian_bounds(rho);
    rows.push_back({rho, gaussian_conditional_index(rho),
                    gaussian_index_bivariate(rho), lower, upper});
  }
  return rows;
}

std::vector<double> rho_grid(int points) {
  if (points < 2) throw InvalidInput("rho_grid: needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] =
        -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = 1.0;
  return g;
}

}  // namespace wassdep
