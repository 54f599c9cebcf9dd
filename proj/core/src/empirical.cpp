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

#include "wassdep/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "wassdep/cost.hpp"
#include "wassdep/ot.hpp"

namespace wassdep {
namespace {

constexpr double kBoxPadding = 1e-9;

double pow_p(double d, double p) {
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidInput("exponent p must be >= 1");
  }
}

// Weighted sum over all ordered pairs: sum_ij w_i w_j |z_i - z_j|^p.
double pair_sum(const Matrix& rows, std::span<const double> w, double p) {
  const std::size_t n = rows.rows();
  const std::size_t d = rows.cols();
  if (p == 2.0) {
    // sum_ij w_i w_j |z_i - z_j|^2 = 2 (W sum_i w_i |z_i|^2 - |sum_i w_i z_i|^2)
    // evaluated per coordinate around the weighted mean.
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += w[i] * rows(i, k);
      mean /= total;
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double c = rows(i, k) - mean;
        ss += w[i] * c * c;
      }
      acc += 2.0 * total * ss;
    }
    return acc;
  }
  if (p == 1.0 && d == 1) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return rows(a, 0) < rows(b, 0);
    });
    double mass_below = 0.0;
    double moment_below = 0.0;
    double acc = 0.0;
    for (std::size_t i : idx) {
      const double z = rows(i, 0);
      acc += w[i] * (z * mass_below - moment_below);
      mass_below += w[i];
      moment_below += w[i] * z;
    }
    return 2.0 * acc;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += w[i] * w[j] * pow_p(euclidean(rows.row(i), rows.row(j)), p);
    }
  }
  return 2.0 * acc;
}

Matrix product_rows(const Matrix& xs, std::span<const std::size_t> xi,
                    const Matrix& ys, std::span<const std::size_t> yi) {
  return Matrix::hstack(xs.select_rows(xi), ys.select_rows(yi));
}

struct Box {
  std::vector<double> lo;
  std::vector<double> width;
};

Box bounding_box(const Matrix& m) {
  Box box{std::vector<double>(m.cols()), std::vector<double>(m.cols())};
  for (std::size_t k = 0; k < m.cols(); ++k) {
    double lo = m(0, k);
    double hi = m(0, k);
    for (std::size_t i = 1; i < m.rows(); ++i) {
      lo = std::min(lo, m(i, k));
      hi = std::max(hi, m(i, k));
    }
    box.lo[k] = lo - kBoxPadding;
    box.width[k] = (hi + kBoxPadding) - box.lo[k];
  }
  return box;
}

std::size_t cell_of(double v, double lo, double width, int bins) {
  const double t = std::floor((v - lo) / width * bins);
  if (t < 0.0) return 0;
  return std::min(static_cast<std::size_t>(t), static_cast<std::size_t>(bins - 1));
}

double cell_centre(std::size_t c, double lo, double width, int bins) {
  return lo + (static_cast<double>(c) + 0.5) * width / bins;
}

Matrix snap(const Matrix& m, int bins) {
  const Box box = bounding_box(m);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const std::size_t c = cell_of(m(i, k), box.lo[k], box.width[k], bins);
      out(i, k) = cell_centre(c, box.lo[k], box.width[k], bins);
    }
  }
  return out;
}

}  // namespace

void PairedSample::validate() const {
  if (xs.rows() != ys.rows()) {
    throw InvalidInput("x and y blocks have different row counts");
  }
  if (xs.rows() == 0) throw InvalidInput("empty sample");
  if (xs.cols() == 0 || ys.cols() == 0) {
    throw InvalidInput("x and y blocks need at least one column");
  }
  for (double v : xs.data()) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite x value");
  }
  for (double v : ys.data()) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite y value");
  }
}

PairedSample PairedSample::from_columns(std::span<const double> x,
                                        std::span<const double> y,
                                        std::uint64_t seed) {
  PairedSample s{Matrix::column(x), Matrix::column(y), seed};
  s.validate();
  return s;
}

DiscreteMeasure to_measure(const Matrix& rows) {
  if (rows.rows() == 0) throw InvalidInput("to_measure: empty sample");
  return DiscreteMeasure::uniform(rows);
}

DiscreteMeasure joint_measure(const PairedSample& sample) {
  sample.validate();
  return DiscreteMeasure::uniform(Matrix::hstack(sample.xs, sample.ys));
}

double gmd_ustat(const Matrix& rows, double p) {
  check_p(p);
  const std::size_t n = rows.rows();
  if (n < 2) throw InvalidInput("gmd_ustat: needs at least 2 rows");
  const std::vector<double> ones(n, 1.0);
  const double nn = static_cast<double>(n);
  return std::max(0.0, pair_sum(rows, ones, p) / (nn * (nn - 1.0)));
}

double gmd_measure(const DiscreteMeasure& law, double p) {
  check_p(p);
  return std::max(0.0, pair_sum(law.points(), law.weights(), p));
}

const char* to_string(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::kSplit:
      return "split";
    case EstimatorMode::kPermute:
      return "permute";
    case EstimatorMode::kFull:
      return "full";
  }
  return "unknown";
}

EstimatorMode parse_estimator_mode(const std::string& name) {
  if (name == "split") return EstimatorMode::kSplit;
  if (name == "permute") return EstimatorMode::kPermute;
  if (name == "full") return EstimatorMode::kFull;
  throw InvalidInput("unknown estimator mode '" + name + "'");
}

ProductEstimate product_estimator(const PairedSample& sample,
                                  std::span<const std::size_t> sigma) {
  sample.validate();
  const std::size_t n = sample.size();
  if (n < 2) throw InvalidInput("permute estimator needs at least 2 rows");
  if (sigma.size() != n) {
    throw InvalidInput("permutation length does not match the sample");
  }
  std::vector<bool> seen(n, false);
  bool identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] >= n || seen[sigma[i]]) {
      throw InvalidInput("sigma is not a permutation");
    }
    seen[sigma[i]] = true;
    identity = identity && sigma[i] == i;
  }
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  ProductEstimate out{
      joint_measure(sample),
      DiscreteMeasure::uniform(product_rows(sample.xs, id, sample.ys, sigma)),
      identity};
  return out;
}

ProductEstimate product_estimator(const PairedSample& sample,
                                  EstimatorMode mode, Rng& rng) {
  sample.validate();
  const std::size_t n = sample.size();
  switch (mode) {
    case EstimatorMode::kSplit: {
      if (n < 3) throw InvalidInput("split estimator needs at least 3 rows");
      const std::size_t k = n / 3;
      std::vector<std::size_t> a(k), b(k), c(k);
      for (std::size_t i = 0; i < k; ++i) {
        a[i] = i;
        b[i] = k + i;
        c[i] = 2 * k + i;
      }
      return {DiscreteMeasure::uniform(product_rows(sample.xs, a, sample.ys, a)),
              DiscreteMeasure::uniform(product_rows(sample.xs, b, sample.ys, c)),
              false};
    }
    case EstimatorMode::kPermute: {
      if (n < 2) throw InvalidInput("permute estimator needs at least 2 rows");
      const auto sigma = random_derangement(n, rng);
      return product_estimator(sample, sigma);
    }
    case EstimatorMode::kFull: {
      if (n < 2) throw InvalidInput("full estimator needs at least 2 rows");
      std::vector<std::size_t> xi;
      std::vector<std::size_t> yi;
      xi.reserve(n * n);
      yi.reserve(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          xi.push_back(i);
          yi.push_back(j);
        }
      }
      return {joint_measure(sample),
              DiscreteMeasure::uniform(product_rows(sample.xs, xi, sample.ys, yi)),
              false};
    }
  }
  throw InvalidInput("unknown estimator mode");
}

std::vector<std::size_t> ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<std::size_t> r(n);
  for (std::size_t k = 0; k < n; ++k) r[idx[k]] = k + 1;
  return r;
}

PairedSample copula_transform(const PairedSample& sample) {
  sample.validate();
  if (sample.dim_x() != 1 || sample.dim_y() != 1) {
    throw InvalidInput("copula_transform: x and y must be one-dimensional");
  }
  const std::size_t n = sample.size();
  const double nn = static_cast<double>(n);
  const auto rx = ranks(sample.xs.data());
  const auto ry = ranks(sample.ys.data());
  PairedSample out{Matrix(n, 1), Matrix(n, 1), sample.seed};
  for (std::size_t i = 0; i < n; ++i) {
    out.xs(i, 0) = (static_cast<double>(rx[i]) - 0.5) / nn;
    out.ys(i, 0) = (static_cast<double>(ry[i]) - 0.5) / nn;
  }
  return out;
}

std::vector<std::size_t> multivariate_ranks(const Matrix& points,
                                            const Matrix& grid) {
  if (points.rows() != grid.rows()) {
    throw InvalidInput("multivariate_ranks: point and grid counts differ");
  }
  if (points.cols() != grid.cols()) {
    throw InvalidInput("multivariate_ranks: dimension mismatch");
  }
  const std::size_t n = points.rows();
  if (n == 0) throw InvalidInput("multivariate_ranks: empty input");
  const TransportPlan plan = solve_exact(DiscreteMeasure::uniform(points),
                                         DiscreteMeasure::uniform(grid),
                                         CostSpec::single(2.0));
  // An optimal vertex of the assignment polytope is a permutation matrix.
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (plan.mass(i, j) > plan.mass(i, best)) best = j;
    }
    out[i] = best;
  }
  return out;
}

DiscreteMeasure ConditionalFamily::merged() const {
  std::size_t total = 0;
  for (const auto& law : laws) total += law.size();
  if (total == 0) throw InvalidInput("empty conditional family");
  Matrix pts(total, laws.front().dim());
  std::vector<double> w;
  w.reserve(total);
  std::size_t r = 0;
  for (std::size_t g = 0; g < laws.size(); ++g) {
    for (std::size_t i = 0; i < laws[g].size(); ++i, ++r) {
      std::copy(laws[g].point(i).begin(), laws[g].point(i).end(),
                pts.row(r).begin());
      w.push_back(weights[g] * laws[g].weight(i));
    }
  }
  return {std::move(pts), std::move(w)};
}

int default_bins_per_axis(std::size_t n, std::size_t dim_x) {
  if (n == 0 || dim_x == 0) throw InvalidInput("default bins: empty sample");
  const double nn = static_cast<double>(n);
  const double cubes = dim_x == 1 ? std::cbrt(nn) : std::sqrt(nn);
  const double per_axis =
      dim_x == 1 ? cubes : std::pow(cubes, 1.0 / static_cast<double>(dim_x));
  return std::max(1, static_cast<int>(std::floor(per_axis + 1e-9)));
}

ConditionalFamily partition(const PairedSample& sample,
                            const PartitionOptions& options) {
  sample.validate();
  const std::size_t n = sample.size();
  const std::size_t dx = sample.dim_x();
  int bins = 0;
  if (options.mode == PartitionMode::kBins) {
    bins = options.bins == 0 ? default_bins_per_axis(n, dx) : options.bins;
    if (bins < 1) throw InvalidInput("partition: bin count must be >= 1");
  }
  const Matrix ys = options.snap_y && options.mode == PartitionMode::kBins
                        ? snap(sample.ys, bins)
                        : sample.ys;

  // Group key -> rows; groups are emitted in order of first appearance.
  std::map<std::vector<double>, std::size_t> key_to_group;
  ConditionalFamily fam;
  std::vector<std::vector<double>> reps;
  const Box box = options.mode == PartitionMode::kBins ? bounding_box(sample.xs)
                                                       : Box{};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> key(dx);
    for (std::size_t k = 0; k < dx; ++k) {
      const double v = sample.xs(i, k);
      key[k] = options.mode == PartitionMode::kExact
                   ? v
                   : cell_centre(cell_of(v, box.lo[k], box.width[k], bins),
                                 box.lo[k], box.width[k], bins);
    }
    const auto [it, inserted] = key_to_group.emplace(key, fam.groups.size());
    if (inserted) {
      fam.groups.emplace_back();
      reps.push_back(std::move(key));
    }
    fam.groups[it->second].push_back(i);
  }
  fam.representatives = Matrix::from_rows(reps);
  for (const auto& g : fam.groups) {
    fam.laws.push_back(DiscreteMeasure::uniform(ys.select_rows(g)));
    fam.weights.push_back(static_cast<double>(g.size()) /
                          static_cast<double>(n));
  }
  fam.marginal = DiscreteMeasure::uniform(ys);
  return fam;
}

bool same_law(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
  if (a.dim() != b.dim()) return false;
  auto atoms = [](const DiscreteMeasure& m) {
    std::map<std::vector<double>, double> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      out[std::vector<double>(m.point(i).begin(), m.point(i).end())] +=
          m.weight(i);
    }
    return out;
  };
  const auto ma = atoms(a);
  const auto mb = atoms(b);
  auto ia = ma.begin();
  auto ib = mb.begin();
  while (ia != ma.end() || ib != mb.end()) {
    if (ib == mb.end() || (ia != ma.end() && ia->first < ib->first)) {
      if (ia->second > tol) return false;
      ++ia;
    } else if (ia == ma.end() || ib->first < ia->first) {
      if (ib->second > tol) return false;
      ++ib;
    } else {
      if (std::abs(ia->second - ib->second) > tol) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

}  // namespace wassdep
