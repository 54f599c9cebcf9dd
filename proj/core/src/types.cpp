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

#include "wassdep/types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace wassdep {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("matrix data size does not match its shape");
  }
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InvalidInput("rows have unequal lengths");
    }
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

std::vector<double> Matrix::col(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto src = row(idx[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

Matrix Matrix::hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) {
    throw InvalidInput("hstack: row counts differ");
  }
  Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    auto dst = out.row(r);
    std::copy(left.row(r).begin(), left.row(r).end(), dst.begin());
    std::copy(right.row(r).begin(), right.row(r).end(),
              dst.begin() + static_cast<std::ptrdiff_t>(left.cols()));
  }
  return out;
}

DiscreteMeasure::DiscreteMeasure(Matrix points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.rows() != weights_.size()) {
    throw InvalidInput("point and weight counts differ");
  }
  if (weights_.empty()) throw InvalidInput("measure has no atoms");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInput("weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightRenormTolerance) {
    throw InvalidInput("weights sum to " + std::to_string(total) +
                       ", expected 1");
  }
  for (double& w : weights_) w /= total;
  for (double v : points_.data()) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite coordinate");
  }
}

DiscreteMeasure DiscreteMeasure::uniform(Matrix points) {
  if (points.rows() == 0) throw InvalidInput("empty sample");
  std::vector<double> w(points.rows(), 1.0 / static_cast<double>(points.rows()));
  return {std::move(points), std::move(w)};
}

DiscreteMeasure DiscreteMeasure::dirac(std::vector<double> point) {
  const std::size_t d = point.size();
  return {Matrix(1, d, std::move(point)), {1.0}};
}

std::vector<double> DiscreteMeasure::values_1d() const {
  if (dim() != 1) throw InvalidInput("expected a one-dimensional measure");
  return points_.data();
}

DiscreteMeasure mix(const DiscreteMeasure& first, const DiscreteMeasure& second,
                    double t) {
  if (first.dim() != second.dim()) throw InvalidInput("mix: dimension mismatch");
  if (t < 0.0 || t > 1.0) throw InvalidInput("mix: level outside [0, 1]");
  Matrix pts(first.size() + second.size(), first.dim());
  std::vector<double> w;
  w.reserve(pts.rows());
  for (std::size_t i = 0; i < first.size(); ++i) {
    std::copy(first.point(i).begin(), first.point(i).end(), pts.row(i).begin());
    w.push_back((1.0 - t) * first.weight(i));
  }
  for (std::size_t i = 0; i < second.size(); ++i) {
    std::copy(second.point(i).begin(), second.point(i).end(),
              pts.row(first.size() + i).begin());
    w.push_back(t * second.weight(i));
  }
  return {std::move(pts), std::move(w)};
}

}  // namespace wassdep
