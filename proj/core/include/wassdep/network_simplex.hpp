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

#ifndef WASSDEP_NETWORK_SIMPLEX_HPP
#define WASSDEP_NETWORK_SIMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wassdep/types.hpp"

namespace wassdep {

// Primal network simplex on the complete bipartite transport graph.
//
// Sources 0..n-1 supply `supply[i]`, sinks n..n+m-1 demand `demand[j]`, every
// arc i -> j has infinite capacity and unit cost cost(i, j). The spanning tree
// is stored with parent / thread / successor-count arrays and an artificial
// root joined to every node; big-M artificial arcs make the initial tree
// feasible. Entering arcs come from a block search over the arc list, the
// leaving arc is chosen so the tree stays strongly feasible, which rules out
// cycling on degenerate pivots.
class NetworkSimplex {
 public:
  enum class Status { kOptimal, kInfeasible, kIterationLimit };

  NetworkSimplex(std::span<const double> supply, std::span<const double> demand,
                 const Matrix& cost);

  Status run(std::int64_t max_pivots = -1);

  // Flow on arc (i, j) after run().
  double flow(std::size_t i, std::size_t j) const {
    return flow_[i * num_sinks_ + j];
  }
  double total_cost() const;
  std::int64_t pivots() const { return pivots_; }

  // Node potentials of the final tree; reduced costs c_ij + pi_i - pi_j
  // are nonnegative at optimality (up to rounding).
  std::vector<double> potentials() const;

 private:
  static constexpr int kDirUp = 1;
  static constexpr int kDirDown = -1;
  static constexpr signed char kStateTree = 0;
  static constexpr signed char kStateLower = 1;

  int source(int arc) const;
  int target(int arc) const;
  double arc_cost(int arc) const;

  bool find_entering_arc();
  void find_join_node();
  bool find_leaving_arc();
  void change_flow(bool change);
  void update_tree_structure();
  void update_potential();

  std::size_t num_sources_;
  std::size_t num_sinks_;
  int node_num_;
  int arc_num_;     // real arcs
  int all_arc_num_; // real + artificial
  int root_;
  const Matrix& cost_;

  std::vector<double> flow_;  // all arcs
  std::vector<signed char> state_;
  std::vector<double> art_cost_;
  std::vector<int> art_source_;
  std::vector<int> art_target_;
  std::vector<double> supply_;

  std::vector<int> parent_;
  std::vector<int> pred_;
  std::vector<int> thread_;
  std::vector<int> rev_thread_;
  std::vector<int> succ_num_;
  std::vector<int> last_succ_;
  std::vector<int> pred_dir_;
  std::vector<double> pi_;
  std::vector<int> dirty_revs_;

  int block_size_ = 0;
  int next_arc_ = 0;
  double epsilon_ = 0.0;

  int in_arc_ = 0;
  int join_ = 0;
  int u_in_ = 0;
  int v_in_ = 0;
  int u_out_ = 0;
  int v_out_ = 0;
  double delta_ = 0.0;
  std::int64_t pivots_ = 0;
};

}  // namespace wassdep

#endif  // WASSDEP_NETWORK_SIMPLEX_HPP
