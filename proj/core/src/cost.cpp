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

#include "wassdep/cost.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace wassdep {

double euclidean(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u[k] - v[k];
    s += d * d;
  }
  return std::sqrt(s);
}

CostSpec CostSpec::single(double p) {
  CostSpec s;
  s.p = p;
  s.validate();
  return s;
}

CostSpec CostSpec::lq(double q, double p, std::vector<std::size_t> factors) {
  CostSpec s;
  s.p = p;
  s.combinator = Combinator::kLq;
  s.q = q;
  s.factors = std::move(factors);
  s.validate();
  return s;
}

CostSpec CostSpec::weighted(double alpha, double p, std::size_t dim_x,
                            std::size_t dim_y) {
  CostSpec s;
  s.p = p;
  s.combinator = Combinator::kAlpha;
  s.alpha = alpha;
  s.factors = {dim_x, dim_y};
  s.validate();
  return s;
}

CostSpec CostSpec::scaled(double scale_x, double scale_y, double p,
                          std::size_t dim_x, std::size_t dim_y) {
  CostSpec s;
  s.p = p;
  s.combinator = Combinator::kScaled;
  s.scales = {scale_x, scale_y};
  s.factors = {dim_x, dim_y};
  s.validate();
  return s;
}

void CostSpec::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("cost exponent p must be >= 1");
  switch (combinator) {
    case Combinator::kSingle:
      break;
    case Combinator::kLq:
      if (!(q >= 1.0)) throw InvalidInput("lq combinator needs q >= 1");
      if (factors.size() < 2) throw InvalidInput("lq combinator needs >= 2 factors");
      break;
    case Combinator::kAlpha:
      if (!(alpha > 0.0)) throw InvalidInput("alpha must be > 0");
      if (factors.size() != 2) throw InvalidInput("alpha combinator needs 2 factors");
      break;
    case Combinator::kScaled:
      if (factors.empty() || scales.size() != factors.size()) {
        throw InvalidInput("scaled combinator needs one scale per factor");
      }
      for (double s : scales) {
        if (!(s > 0.0) || !std::isfinite(s)) {
          throw InvalidInput("scale factors must be strictly positive");
        }
      }
      break;
  }
  for (std::size_t f : factors) {
    if (f == 0) throw InvalidInput("factor dimensions must be positive");
  }
}

std::size_t CostSpec::expected_dim() const {
  if (combinator == Combinator::kSingle) return 0;
  return std::accumulate(factors.begin(), factors.end(), std::size_t{0});
}

double CostSpec::distance(std::span<const double> u,
                          std::span<const double> v) const {
  if (combinator == Combinator::kSingle) return euclidean(u, v);
  std::size_t offset = 0;
  double acc = 0.0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const double d =
        euclidean(u.subspan(offset, factors[k]), v.subspan(offset, factors[k]));
    offset += factors[k];
    switch (combinator) {
      case Combinator::kLq:
        acc += q == 1.0 ? d : std::pow(d, q);
        break;
      case Combinator::kAlpha:
        acc += k == 0 ? alpha * d : d;
        break;
      case Combinator::kScaled:
        acc += d / scales[k];
        break;
      case Combinator::kSingle:
        break;
    }
  }
  if (combinator == Combinator::kLq && q != 1.0) return std::pow(acc, 1.0 / q);
  return acc;
}

double CostSpec::cost(std::span<const double> u, std::span<const double> v) const {
  const double d = distance(u, v);
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

Matrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                   const CostSpec& spec) {
  if (src.dim() != dst.dim()) {
    throw InvalidInput("cost_matrix: dimension mismatch (" +
                       std::to_string(src.dim()) + " vs " +
                       std::to_string(dst.dim()) + ")");
  }
  spec.validate();
  const std::size_t expected = spec.expected_dim();
  if (expected != 0 && expected != src.dim()) {
    throw InvalidInput("cost_matrix: factor layout does not match point dimension");
  }
  Matrix c(src.size(), dst.size());
  // Squared Euclidean is the common hot path.
  const bool sq_euclid = spec.combinator == Combinator::kSingle && spec.p == 2.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto u = src.point(i);
    for (std::size_t j = 0; j < dst.size(); ++j) {
      const auto v = dst.point(j);
      if (sq_euclid) {
        double s = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
          const double d = u[k] - v[k];
          s += d * d;
        }
        c(i, j) = s;
      } else {
        c(i, j) = spec.cost(u, v);
      }
    }
  }
  return c;
}

}  // namespace wassdep
