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

// Signed index from the distance to the diagonal coupling L(X, X),
// normalized by the antithetic coupling L(X, a - X).

#ifndef WASSDEP_CONCORDANCE_HPP
#define WASSDEP_CONCORDANCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wassdep/empirical.hpp"

namespace wassdep {

struct DiagonalMap {
  std::vector<double> s;  // x_i + y_i, row order
  std::vector<double> g;  // F_X^-1(F_{X+Y}(s_i)), row order
};

// Monotone matching of the sorted sums to the sorted x values; equal sums
// are matched in row order.
DiagonalMap diagonal_transport_map(const PairedSample& sample);

// W2 between the sample and the diagonal coupling of its x marginal:
// sqrt(mean (x - g)^2 + mean (y - g)^2).
double d_to_diagonal(const PairedSample& sample);

// W2 between L(X, a - X) and L(X, X). Every coupling has the same cost, so
// this is sqrt(4 Var(X) + (2 mean(X) - a)^2), i.e. 2 std(X) when a - X has
// the law of X.
double antithetic_denominator(std::span<const double> x, double a);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::span<const double> a, std::span<const double> b);

enum class ConcordanceMode { kRaw, kCopula };

struct ConcordanceOptions {
  ConcordanceMode mode = ConcordanceMode::kCopula;
  // Raw mode symmetry centre; defaults to 2 mean(x). Copula mode ignores it.
  std::optional<double> a;
  // Symmetry check failures throw instead of warning.
  bool strict = false;
};

struct ConcordanceReport {
  double value = 0.0;  // 1 - 2 numerator / denominator
  double numerator = 0.0;
  double denominator = 0.0;
  double a = 0.0;  // in the units the computation ran in
  ConcordanceMode mode = ConcordanceMode::kCopula;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

// Copula mode runs on integer ranks (x = rank, y = rank, a = n + 1), which
// is an affine image of the normalized ranks and leaves the ratio unchanged.
ConcordanceReport concordance_index(const PairedSample& sample,
                                    const ConcordanceOptions& options = {});

}  // namespace wassdep

#endif  // WASSDEP_CONCORDANCE_HPP
