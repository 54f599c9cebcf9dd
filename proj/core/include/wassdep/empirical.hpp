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

// Samples, product-law estimators, mean discrepancies, rank transforms and
// conditional-law partitions.

#ifndef WASSDEP_EMPIRICAL_HPP
#define WASSDEP_EMPIRICAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wassdep/random.hpp"
#include "wassdep/types.hpp"

namespace wassdep {

struct PairedSample {
  Matrix xs;
  Matrix ys;
  std::uint64_t seed = 0;

  std::size_t size() const { return xs.rows(); }
  std::size_t dim_x() const { return xs.cols(); }
  std::size_t dim_y() const { return ys.cols(); }

  // Throws InvalidInput on row-count mismatch, empty blocks or non-finite
  // entries.
  void validate() const;

  static PairedSample from_columns(std::span<const double> x,
                                   std::span<const double> y,
                                   std::uint64_t seed = 0);
};

// Uniform weights 1/n on the rows (repeated rows stay separate atoms).
DiscreteMeasure to_measure(const Matrix& rows);
// Uniform law on the rows of [xs | ys].
DiscreteMeasure joint_measure(const PairedSample& sample);

// (1 / (n (n - 1))) sum_{i != j} |z_i - z_j|^p, Euclidean rows.
double gmd_ustat(const Matrix& rows, double p);
// E |Z - Z'|^p for Z, Z' independent draws from the law (with replacement).
double gmd_measure(const DiscreteMeasure& law, double p);

enum class EstimatorMode { kSplit, kPermute, kFull };

const char* to_string(EstimatorMode mode);
EstimatorMode parse_estimator_mode(const std::string& name);

struct ProductEstimate {
  DiscreteMeasure joint;
  DiscreteMeasure product;
  // Permute mode with a permutation that fixes every row: the product
  // estimate is the joint estimate.
  bool degenerate = false;
};

// Joint and product-of-marginals estimates on X x Y. Permute mode draws a
// uniform derangement from `rng`.
ProductEstimate product_estimator(const PairedSample& sample,
                                  EstimatorMode mode, Rng& rng);
// Permute mode with an explicit permutation: product atoms (x_i, y_sigma(i)).
ProductEstimate product_estimator(const PairedSample& sample,
                                  std::span<const std::size_t> sigma);

// 1-based ranks; ties broken by row index.
std::vector<std::size_t> ranks(std::span<const double> values);
// (rank - 0.5) / n for each 1D coordinate.
PairedSample copula_transform(const PairedSample& sample);

// assignment[i] = grid row matched to data row i under the optimal
// squared-Euclidean assignment.
std::vector<std::size_t> multivariate_ranks(const Matrix& points,
                                            const Matrix& grid);

struct ConditionalFamily {
  std::vector<std::vector<std::size_t>> groups;  // row indices, ascending
  Matrix representatives;                        // one x per group
  std::vector<DiscreteMeasure> laws;             // empirical Y per group
  std::vector<double> weights;                   // group size / n
  DiscreteMeasure marginal;                      // empirical Y, same atoms

  std::size_t size() const { return groups.size(); }
  // Mixture of the group laws, as one measure over all rows.
  DiscreteMeasure merged() const;
};

enum class PartitionMode { kExact, kBins };

struct PartitionOptions {
  PartitionMode mode = PartitionMode::kExact;
  // Cubes per x axis in bins mode; 0 picks default_bins_per_axis.
  int bins = 0;
  // Also send y to the centre of its cube (on the y bounding box).
  bool snap_y = false;
};

// Cube count rule: n^(1/3) cubes for 1D x, n^(1/2) cubes otherwise, spread
// evenly over the axes (floor of the m-th root, at least 1).
int default_bins_per_axis(std::size_t n, std::size_t dim_x);

ConditionalFamily partition(const PairedSample& sample,
                            const PartitionOptions& options);

// Atom-by-atom comparison after merging equal points.
bool same_law(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol);

}  // namespace wassdep

#endif  // WASSDEP_EMPIRICAL_HPP
