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

// Independent assignment oracles for uniform-weight transport. Only used by
// tests; deliberately shares no code with the library solvers.

#ifndef WASSDEP_TESTS_ORACLES_ASSIGNMENT_HPP
#define WASSDEP_TESTS_ORACLES_ASSIGNMENT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace wassdep::oracle {

using Table = std::vector<std::vector<double>>;

// Minimum over all permutations of sum_i c[i][s(i)], divided by n.
inline double brute_force_assignment(const Table& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += c[i][s[i]];
    best = std::min(best, acc);
  } while (std::next_permutation(s.begin(), s.end()));
  return best / static_cast<double>(n);
}

// Shortest augmenting path Hungarian method (potentials, 1-based arrays).
inline double hungarian_assignment(const Table& c) {
  const std::size_t n = c.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double acc = 0.0;
  for (std::size_t j = 1; j <= n; ++j) acc += c[p[j] - 1][j - 1];
  return acc / static_cast<double>(n);
}

// Uniform n x m transport equals an L x L assignment, L = lcm(n, m), with
// each source atom copied L / n times and each target atom L / m times.
inline Table replicate_uniform(const Table& c) {
  const std::size_t n = c.size();
  const std::size_t m = c.front().size();
  const std::size_t l = std::lcm(n, m);
  Table out(l, std::vector<double>(l));
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) out[a][b] = c[a / (l / n)][b / (l / m)];
  }
  return out;
}

// Exact uniform transport cost; enumeration when small, Hungarian otherwise.
inline double uniform_transport_oracle(const Table& c) {
  const Table rep = replicate_uniform(c);
  return rep.size() <= 8 ? brute_force_assignment(rep) : hungarian_assignment(rep);
}

}  // namespace wassdep::oracle

#endif  // WASSDEP_TESTS_ORACLES_ASSIGNMENT_HPP
