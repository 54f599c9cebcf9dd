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

#include "wassdep/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wassdep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

NetworkSimplex::NetworkSimplex(std::span<const double> supply,
                               std::span<const double> demand,
                               const Matrix& cost)
    : num_sources_(supply.size()),
      num_sinks_(demand.size()),
      node_num_(static_cast<int>(supply.size() + demand.size())),
      arc_num_(static_cast<int>(supply.size() * demand.size())),
      all_arc_num_(arc_num_ + node_num_),
      root_(node_num_),
      cost_(cost) {
  if (cost.rows() != num_sources_ || cost.cols() != num_sinks_) {
    throw InvalidInput("cost matrix shape does not match the marginals");
  }
  supply_.resize(node_num_ + 1);
  for (std::size_t i = 0; i < num_sources_; ++i) supply_[i] = supply[i];
  for (std::size_t j = 0; j < num_sinks_; ++j) {
    supply_[num_sources_ + j] = -demand[j];
  }

  double max_cost = 0.0;
  for (double c : cost.data()) max_cost = std::max(max_cost, std::abs(c));
  const double art_cost = (max_cost + 1.0) * node_num_;
  // Potentials reach art_cost, so reduced costs carry rounding of that size.
  epsilon_ = 64.0 * std::numeric_limits<double>::epsilon() * art_cost;

  flow_.assign(all_arc_num_, 0.0);
  state_.assign(all_arc_num_, kStateLower);
  art_cost_.assign(node_num_, 0.0);
  art_source_.assign(node_num_, 0);
  art_target_.assign(node_num_, 0);

  const int n1 = node_num_ + 1;
  parent_.assign(n1, 0);
  pred_.assign(n1, 0);
  thread_.assign(n1, 0);
  rev_thread_.assign(n1, 0);
  succ_num_.assign(n1, 0);
  last_succ_.assign(n1, 0);
  pred_dir_.assign(n1, 0);
  pi_.assign(n1, 0.0);

  double total = 0.0;
  for (int u = 0; u < node_num_; ++u) total += supply_[u];
  supply_[root_] = -total;

  parent_[root_] = -1;
  pred_[root_] = -1;
  thread_[root_] = 0;
  rev_thread_[0] = root_;
  succ_num_[root_] = node_num_ + 1;
  last_succ_[root_] = root_ - 1;
  pi_[root_] = 0.0;

  for (int u = 0; u < node_num_; ++u) {
    const int e = arc_num_ + u;
    parent_[u] = root_;
    pred_[u] = e;
    thread_[u] = u + 1;
    rev_thread_[u + 1] = u;
    succ_num_[u] = 1;
    last_succ_[u] = u;
    state_[e] = kStateTree;
    if (supply_[u] >= 0) {
      pred_dir_[u] = kDirUp;
      pi_[u] = 0.0;
      art_source_[u] = u;
      art_target_[u] = root_;
      flow_[e] = supply_[u];
      art_cost_[u] = 0.0;
    } else {
      pred_dir_[u] = kDirDown;
      pi_[u] = art_cost;
      art_source_[u] = root_;
      art_target_[u] = u;
      flow_[e] = -supply_[u];
      art_cost_[u] = art_cost;
    }
  }

  block_size_ = std::max(10, static_cast<int>(std::sqrt(double(arc_num_))));
}

int NetworkSimplex::source(int arc) const {
  if (arc < arc_num_) return arc / static_cast<int>(num_sinks_);
  return art_source_[arc - arc_num_];
}

int NetworkSimplex::target(int arc) const {
  if (arc < arc_num_) {
    return static_cast<int>(num_sources_) + arc % static_cast<int>(num_sinks_);
  }
  return art_target_[arc - arc_num_];
}

double NetworkSimplex::arc_cost(int arc) const {
  if (arc < arc_num_) return cost_.data()[arc];
  return art_cost_[arc - arc_num_];
}

NetworkSimplex::Status NetworkSimplex::run(std::int64_t max_pivots) {
  if (arc_num_ == 0) return Status::kInfeasible;
  while (find_entering_arc()) {
    if (max_pivots >= 0 && pivots_ >= max_pivots) {
      return Status::kIterationLimit;
    }
    find_join_node();
    const bool change = find_leaving_arc();
    if (!(delta_ < kInf)) return Status::kInfeasible;
    change_flow(change);
    if (change) {
      update_tree_structure();
      update_potential();
    }
    ++pivots_;
  }
  // Residual flow on artificial arcs means the marginals could not be met.
  for (int u = 0; u < node_num_; ++u) {
    if (flow_[arc_num_ + u] > 1e-9) return Status::kInfeasible;
  }
  return Status::kOptimal;
}

bool NetworkSimplex::find_entering_arc() {
  double min = -epsilon_;
  int cnt = block_size_;
  int e = next_arc_;
  bool found = false;
  auto scan = [&](int arc) {
    const double c =
        state_[arc] * (cost_.data()[arc] + pi_[arc / static_cast<int>(num_sinks_)] -
                       pi_[static_cast<int>(num_sources_) +
                           arc % static_cast<int>(num_sinks_)]);
    if (c < min) {
      min = c;
      in_arc_ = arc;
      found = true;
    }
    if (--cnt == 0) {
      if (found) return true;
      cnt = block_size_;
    }
    return false;
  };
  for (e = next_arc_; e != arc_num_; ++e) {
    if (scan(e)) {
      next_arc_ = e + 1 == arc_num_ ? 0 : e + 1;
      return true;
    }
  }
  for (e = 0; e != next_arc_; ++e) {
    if (scan(e)) {
      next_arc_ = e + 1;
      return true;
    }
  }
  if (!found) return false;
  next_arc_ = e == arc_num_ ? 0 : e;
  return true;
}

void NetworkSimplex::find_join_node() {
  int u = source(in_arc_);
  int v = target(in_arc_);
  while (u != v) {
    if (succ_num_[u] < succ_num_[v]) {
      u = parent_[u];
    } else {
      v = parent_[v];
    }
  }
  join_ = u;
}

bool NetworkSimplex::find_leaving_arc() {
  int first;
  int second;
  if (state_[in_arc_] == kStateLower) {
    first = source(in_arc_);
    second = target(in_arc_);
  } else {
    first = target(in_arc_);
    second = source(in_arc_);
  }
  delta_ = kInf;
  int result = 0;
  // Arcs whose flow shrinks along the cycle are the only blocking ones; all
  // capacities are infinite.
  for (int u = first; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == kDirUp) {
      const double d = flow_[pred_[u]];
      if (d < delta_) {
        delta_ = d;
        u_out_ = u;
        result = 1;
      }
    }
  }
  for (int u = second; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == kDirDown) {
      const double d = flow_[pred_[u]];
      if (d <= delta_) {
        delta_ = d;
        u_out_ = u;
        result = 2;
      }
    }
  }
  if (result == 1) {
    u_in_ = first;
    v_in_ = second;
  } else {
    u_in_ = second;
    v_in_ = first;
  }
  return result != 0;
}

void NetworkSimplex::change_flow(bool change) {
  if (delta_ > 0) {
    const double val = state_[in_arc_] * delta_;
    flow_[in_arc_] += val;
    for (int u = source(in_arc_); u != join_; u = parent_[u]) {
      flow_[pred_[u]] -= pred_dir_[u] * val;
    }
    for (int u = target(in_arc_); u != join_; u = parent_[u]) {
      flow_[pred_[u]] += pred_dir_[u] * val;
    }
  }
  if (change) {
    state_[in_arc_] = kStateTree;
    state_[pred_[u_out_]] = kStateLower;
    flow_[pred_[u_out_]] = 0.0;
  } else {
    state_[in_arc_] = static_cast<signed char>(-state_[in_arc_]);
  }
}

void NetworkSimplex::update_tree_structure() {
  const int old_rev_thread = rev_thread_[u_out_];
  const int old_succ_num = succ_num_[u_out_];
  const int old_last_succ = last_succ_[u_out_];
  v_out_ = parent_[u_out_];

  if (u_in_ == u_out_) {
    parent_[u_in_] = v_in_;
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kDirUp : kDirDown;

    if (thread_[v_in_] != u_out_) {
      int after = thread_[old_last_succ];
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
      after = thread_[v_in_];
      thread_[v_in_] = u_out_;
      rev_thread_[u_out_] = v_in_;
      thread_[old_last_succ] = after;
      rev_thread_[after] = old_last_succ;
    }
  } else {
    // When old_rev_thread == v_in, join and v_out coincide.
    const int thread_continue =
        old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

    // Re-hang the stem nodes between u_in and u_out.
    int stem = u_in_;
    int par_stem = v_in_;
    int next_stem;
    int last = last_succ_[u_in_];
    int before;
    int after = thread_[last];
    thread_[v_in_] = u_in_;
    dirty_revs_.clear();
    dirty_revs_.push_back(v_in_);
    while (stem != u_out_) {
      next_stem = parent_[stem];
      thread_[last] = next_stem;
      dirty_revs_.push_back(last);

      before = rev_thread_[stem];
      thread_[before] = after;
      rev_thread_[after] = before;

      parent_[stem] = par_stem;
      par_stem = stem;
      stem = next_stem;

      last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem]
                                                      : last_succ_[stem];
      after = thread_[last];
    }
    parent_[u_out_] = par_stem;
    thread_[last] = thread_continue;
    rev_thread_[thread_continue] = last;
    last_succ_[u_out_] = last;

    if (old_rev_thread != v_in_) {
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
    }

    for (int u : dirty_revs_) rev_thread_[thread_[u]] = u;

    int tmp_sc = 0;
    const int tmp_ls = last_succ_[u_out_];
    for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
      pred_[u] = pred_[p];
      pred_dir_[u] = -pred_dir_[p];
      tmp_sc += succ_num_[u] - succ_num_[p];
      succ_num_[u] = tmp_sc;
      last_succ_[p] = tmp_ls;
    }
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kDirUp : kDirDown;
    succ_num_[u_in_] = old_succ_num;
  }

  const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
  const int last_succ_out = last_succ_[u_out_];
  for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) {
    last_succ_[u] = last_succ_out;
  }

  if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = old_rev_thread;
    }
  } else if (last_succ_out != old_last_succ) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = last_succ_out;
    }
  }

  for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
  for (int u = v_out_; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
}

void NetworkSimplex::update_potential() {
  const double sigma =
      pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * arc_cost(in_arc_);
  const int end = thread_[last_succ_[u_in_]];
  for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
}

double NetworkSimplex::total_cost() const {
  double total = 0.0;
  for (int e = 0; e < arc_num_; ++e) {
    if (flow_[e] != 0.0) total += flow_[e] * cost_.data()[e];
  }
  return total;
}

std::vector<double> NetworkSimplex::potentials() const {
  return {pi_.begin(), pi_.begin() + node_num_};
}

}  // namespace wassdep
