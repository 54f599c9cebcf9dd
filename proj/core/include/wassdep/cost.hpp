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

#ifndef WASSDEP_COST_HPP
#define WASSDEP_COST_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "wassdep/types.hpp"

namespace wassdep {

// How per-factor Euclidean distances combine into a distance on a product
// space.
enum class Combinator {
  kSingle,  // Euclidean on the whole vector, no factor structure
  kLq,      // (sum_k d_k^q)^(1/q)
  kAlpha,   // alpha * d_1 + d_2
  kScaled,  // sum_k d_k / s_k
};

// Ground cost c(u, v) = d(u, v)^p.
//
// `factors` lists the dimensions of the product factors in coordinate order
// (for X x Y: {dX, dY}). It is ignored by kSingle. Use the factory functions;
// they validate parameters.
struct CostSpec {
  double p = 1.0;
  Combinator combinator = Combinator::kSingle;
  double q = 1.0;
  double alpha = 1.0;
  std::vector<double> scales;
  std::vector<std::size_t> factors;

  static CostSpec single(double p);
  static CostSpec lq(double q, double p, std::vector<std::size_t> factors);
  static CostSpec weighted(double alpha, double p, std::size_t dim_x,
                           std::size_t dim_y);
  static CostSpec scaled(double scale_x, double scale_y, double p,
                         std::size_t dim_x, std::size_t dim_y);

  // Throws InvalidInput on p < 1, q < 1, alpha <= 0 or non-positive scales.
  void validate() const;

  // The ground distance d(u, v) (not raised to p).
  double distance(std::span<const double> u, std::span<const double> v) const;
  double cost(std::span<const double> u, std::span<const double> v) const;

  // Total dimension the factor layout expects, 0 for kSingle.
  std::size_t expected_dim() const;
};

double euclidean(std::span<const double> u, std::span<const double> v);

// Pairwise cost matrix, entry (i, j) = d(src_i, dst_j)^p.
Matrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                   const CostSpec& spec);

}  // namespace wassdep

#endif  // WASSDEP_COST_HPP
