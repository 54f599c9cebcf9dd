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

#include "wassdep/concordance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wassdep {
namespace {

// Band for the symmetry check: twice the 95% two-sample KS critical value.
constexpr double kSymmetryBand = 2.0 * 1.36;

std::vector<std::size_t> sorted_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

void require_1d(const PairedSample& sample, const char* what) {
  sample.validate();
  if (sample.dim_x() != 1 || sample.dim_y() != 1) {
    throw InvalidInput(std::string(what) + ": x and y must be one-dimensional");
  }
}

double diagonal_cost(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = x[i] + y[i];
  std::vector<double> xs(x.begin(), x.end());
  std::sort(xs.begin(), xs.end());
  const auto os = sorted_order(s);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = os[k];
    const double dx = x[i] - xs[k];
    const double dy = y[i] - xs[k];
    acc += dx * dx + dy * dy;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

DiagonalMap diagonal_transport_map(const PairedSample& sample) {
  require_1d(sample, "diagonal_transport_map");
  const std::size_t n = sample.size();
  DiagonalMap map{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) map.s[i] = sample.xs(i, 0) + sample.ys(i, 0);
  std::vector<double> xs = sample.xs.data();
  std::sort(xs.begin(), xs.end());
  const auto os = sorted_order(map.s);
  for (std::size_t k = 0; k < n; ++k) map.g[os[k]] = xs[k];
  return map;
}

double d_to_diagonal(const PairedSample& sample) {
  require_1d(sample, "d_to_diagonal");
  return std::sqrt(diagonal_cost(sample.xs.data(), sample.ys.data()));
}

double antithetic_denominator(std::span<const double> x, double a) {
  if (x.empty()) throw InvalidInput("antithetic_denominator: empty sample");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = ss / n;
  if (!(var > 0.0)) throw DegenerateMarginal("antithetic_denominator: x is constant");
  const double shift = 2.0 * mean - a;
  return std::sqrt(4.0 * var + shift * shift);
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("ks_distance: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double t = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == t) ++i;
    while (j < sb.size() && sb[j] == t) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na -
                                   static_cast<double>(j) / nb));
  }
  return best;
}

ConcordanceReport concordance_index(const PairedSample& sample,
                                    const ConcordanceOptions& options) {
  require_1d(sample, "concordance_index");
  const std::size_t n = sample.size();
  const double nn = static_cast<double>(n);
  ConcordanceReport r;
  r.mode = options.mode;
  r.n = n;

  std::vector<double> x(n);
  std::vector<double> y(n);
  if (options.mode == ConcordanceMode::kCopula) {
    const auto rx = ranks(sample.xs.data());
    const auto ry = ranks(sample.ys.data());
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rx[i]);
      y[i] = static_cast<double>(ry[i]);
    }
    r.a = nn + 1.0;
  } else {
    x = sample.xs.data();
    y = sample.ys.data();
    r.a = options.a.value_or(2.0 * std::accumulate(x.begin(), x.end(), 0.0) / nn);
    std::vector<double> reflected(n);
    for (std::size_t i = 0; i < n; ++i) reflected[i] = r.a - x[i];
    const double band = kSymmetryBand / std::sqrt(nn);
    const double ks_sym = ks_distance(x, reflected);
    if (ks_sym > band) {
      const std::string msg = "a - X does not look distributed as X (KS " +
                              std::to_string(ks_sym) + " > " +
                              std::to_string(band) + ")";
      if (options.strict) throw InvalidInput("concordance_index: " + msg);
      r.warnings.push_back(msg);
    }
    const double ks_xy = ks_distance(x, y);
    if (ks_xy > band) {
      const std::string msg = "X and Y marginals differ (KS " +
                              std::to_string(ks_xy) + " > " +
                              std::to_string(band) + ")";
      if (options.strict) throw InvalidInput("concordance_index: " + msg);
      r.warnings.push_back(msg);
    }
  }

  // The antithetic sample goes through the same routine, so y = a - x
  // reproduces the denominator exactly.
  std::vector<double> anti(n);
  for (std::size_t i = 0; i < n; ++i) anti[i] = r.a - x[i];
  r.denominator = std::sqrt(diagonal_cost(x, anti));
  if (!(r.denominator > 0.0)) {
    throw DegenerateMarginal("concordance_index: x is constant");
  }
  r.numerator = std::sqrt(diagonal_cost(x, y));
  r.value = 1.0 - 2.0 * r.numerator / r.denominator;
  return r;
}

}  // namespace wassdep
