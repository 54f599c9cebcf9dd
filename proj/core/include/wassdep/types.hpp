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

#ifndef WASSDEP_TYPES_HPP
#define WASSDEP_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wassdep {

// Thrown when an input violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A marginal is (empirically) constant, so a normalizing discrepancy is zero.
class DegenerateMarginal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Dense row-major matrix of doubles. Rows are points or observations.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  // Builds a matrix from nested rows; all rows must have equal length.
  static Matrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  // A single column (n x 1) matrix.
  static Matrix column(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> col(std::size_t c) const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  // Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const;
  // Horizontal concatenation; both operands need equal row counts.
  static Matrix hstack(const Matrix& left, const Matrix& right);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Weighted point cloud: an empirical or synthetic law on R^d.
//
// Weights sum to one. Construction renormalizes when the sum is within
// kWeightRenormTolerance of one and rejects it otherwise.
class DiscreteMeasure {
 public:
  static constexpr double kWeightRenormTolerance = 1e-9;

  DiscreteMeasure() = default;
  DiscreteMeasure(Matrix points, std::vector<double> weights);

  // Uniform weights 1/n on the rows of `points`.
  static DiscreteMeasure uniform(Matrix points);
  static DiscreteMeasure dirac(std::vector<double> point);

  std::size_t size() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  double weight(std::size_t i) const { return weights_[i]; }

  const Matrix& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  // Coordinates of a one-dimensional measure; throws unless dim() == 1.
  std::vector<double> values_1d() const;

 private:
  Matrix points_;
  std::vector<double> weights_;
};

// Mixture (1 - t) * first + t * second as a concatenated atom list.
DiscreteMeasure mix(const DiscreteMeasure& first, const DiscreteMeasure& second,
                    double t);

}  // namespace wassdep

#endif  // WASSDEP_TYPES_HPP
