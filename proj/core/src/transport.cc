// transport.cc
//
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
//
// Copyright 2026 The mtht Authors.
//
#include "mtht/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtht/error.h"

namespace mtht {

namespace {

// Consecutive zero-step pivots tolerated before switching to Bland's rule.
constexpr std::size_t kDegenerateLimit = 64;

class TransportSimplex {
 public:
  TransportSimplex(std::span<const double> supply, std::span<const double> demand,
                   std::span<const double> cost, double tolerance)
      : m_(supply.size()),
        n_(demand.size()),
        cost_(cost),
        tol_(tolerance),
        flow_(m_ * n_, 0.0),
        basic_(m_ * n_, 0),
        u_(m_),
        v_(n_) {
    northwest_corner(supply, demand);
  }

  TransportSolution solve() {
    std::size_t degenerate_run = 0;
    bool bland = false;
    const std::size_t max_pivots = 50 * (m_ + n_) * (m_ + n_) + 1000;
    std::size_t pivots = 0;
    for (;;) {
      compute_potentials();
      const std::size_t entering = choose_entering(bland);
      if (entering == kNone) break;
      if (++pivots > max_pivots) throw Error("transportation simplex failed to converge");
      const double step = pivot(entering, bland);
      if (step == 0.0) {
        if (++degenerate_run > kDegenerateLimit) bland = true;
      } else {
        degenerate_run = 0;
      }
    }
    TransportSolution sol;
    sol.pivots = pivots;
    for (std::size_t cell : cells_) {
      sol.cost += flow_[cell] * cost_[cell];
      if (flow_[cell] > 0) sol.flows.push_back({cell / n_, cell % n_, flow_[cell]});
    }
    std::sort(sol.flows.begin(), sol.flows.end(), [](const Flow &a, const Flow &b) {
      return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    sol.row_potential = u_;
    sol.col_potential = v_;
    return sol;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void add_basic(std::size_t cell) {
    basic_[cell] = 1;
    cells_.push_back(cell);
  }

  void northwest_corner(std::span<const double> supply, std::span<const double> demand) {
    std::vector<double> s(supply.begin(), supply.end());
    std::vector<double> d(demand.begin(), demand.end());
    std::size_t i = 0, j = 0;
    for (;;) {
      const bool row_first = s[i] <= d[j];
      const double x = std::min(s[i], d[j]);
      flow_[i * n_ + j] = x;
      add_basic(i * n_ + j);
      if (row_first) {
        s[i] = 0;
        d[j] -= x;
      } else {
        d[j] = 0;
        s[i] -= x;
      }
      if (i == m_ - 1 && j == n_ - 1) break;
      if ((row_first && i + 1 < m_) || j + 1 == n_) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Tree nodes: rows 0..m-1, columns m..m+n-1; basic cells are the edges.
  void build_adjacency() {
    adj_.assign(m_ + n_, {});
    for (std::size_t cell : cells_) {
      const std::size_t i = cell / n_, j = cell % n_;
      adj_[i].push_back(m_ + j);
      adj_[m_ + j].push_back(i);
    }
  }

  void compute_potentials() {
    build_adjacency();
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> stack = {0};
    seen[0] = 1;
    u_[0] = 0.0;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t next : adj_[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        if (node < m_) {
          v_[next - m_] = cost_[node * n_ + (next - m_)] - u_[node];
        } else {
          u_[next] = cost_[next * n_ + (node - m_)] - v_[node - m_];
        }
        stack.push_back(next);
      }
    }
  }

  std::size_t choose_entering(bool bland) const {
    std::size_t best = kNone;
    double best_rc = -tol_;
    for (std::size_t cell = 0; cell < m_ * n_; ++cell) {
      if (basic_[cell]) continue;
      const double rc = cost_[cell] - u_[cell / n_] - v_[cell % n_];
      if (rc < best_rc) {
        best = cell;
        if (bland) return best;
        best_rc = rc;
      }
    }
    return best;
  }

  // Path of tree nodes from row `from` to column node `to`.
  std::vector<std::size_t> tree_path(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> parent(m_ + n_, kNone);
    std::vector<std::size_t> queue = {from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (node == to) break;
      for (std::size_t next : adj_[node]) {
        if (parent[next] != kNone) continue;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t node = to;; node = parent[node]) {
      path.push_back(node);
      if (node == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  std::size_t edge_cell(std::size_t a, std::size_t b) const {
    return a < m_ ? a * n_ + (b - m_) : b * n_ + (a - m_);
  }

  double pivot(std::size_t entering, bool bland) {
    const std::size_t p = entering / n_, q = entering % n_;
    const auto path = tree_path(p, m_ + q);
    const std::size_t k = path.size() - 1;  // number of edges, odd

    std::vector<std::size_t> plus, minus;
    for (std::size_t t = 1; t <= k; ++t) {
      const std::size_t cell = edge_cell(path[t - 1], path[t]);
      ((k - t) % 2 == 0 ? minus : plus).push_back(cell);
    }
    std::size_t leaving = kNone;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t cell : minus) {
      const double x = flow_[cell];
      if (x < theta || (x == theta && bland && cell < leaving)) {
        theta = x;
        leaving = cell;
      }
    }
    flow_[entering] = theta;
    for (std::size_t cell : plus) flow_[cell] += theta;
    for (std::size_t cell : minus) flow_[cell] = std::max(0.0, flow_[cell] - theta);
    flow_[leaving] = 0.0;

    basic_[leaving] = 0;
    *std::find(cells_.begin(), cells_.end(), leaving) = entering;
    basic_[entering] = 1;
    return theta;
  }

  std::size_t m_, n_;
  std::span<const double> cost_;
  double tol_;
  std::vector<double> flow_;
  std::vector<char> basic_;
  std::vector<std::size_t> cells_;
  std::vector<double> u_, v_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace

TransportSolution solve_transport(std::span<const double> supply, std::span<const double> demand,
                                  std::span<const double> cost, double tolerance) {
  if (supply.empty() || demand.empty()) throw Error("transport problem needs supplies and demands");
  if (cost.size() != supply.size() * demand.size()) {
    throw Error("cost matrix size does not match supply x demand");
  }
  const auto negative = [](double x) { return !(x >= 0.0) || !std::isfinite(x); };
  if (std::any_of(supply.begin(), supply.end(), negative) ||
      std::any_of(demand.begin(), demand.end(), negative)) {
    throw Error("supplies and demands must be finite and non-negative");
  }
  if (std::any_of(cost.begin(), cost.end(), [](double c) { return !std::isfinite(c); })) {
    throw Error("transport costs must be finite");
  }
  const double total_s = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double total_d = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(total_s - total_d) > 1e-9 * std::max({1.0, total_s, total_d})) {
    throw Error("unbalanced transport problem");
  }
  return TransportSimplex(supply, demand, cost, tolerance).solve();
}

}  // namespace mtht
