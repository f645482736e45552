// Copyright 2026 The areaot Authors
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

#pragma once

// Exact transportation simplex for small instances (verification only).
// Northwest-corner start, u/v potentials on the basis tree, Bland's rule for
// both the entering and the leaving cell.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "areaot/problem.hpp"

namespace areaot {

inline constexpr std::size_t kOracleMaxN = 16;

struct BasisCell {
  std::size_t row = 0;
  std::size_t col = 0;
};

struct OracleResult {
  double optimum = 0.0;
  TransportPlan plan;
  std::vector<BasisCell> vertex;  // 2n - 1 basic cells, row-major order
  int pivots = 0;
};

namespace detail {

// Basis tree over 2n nodes: rows are 0..n-1, columns n..2n-1.
class BasisTree {
 public:
  explicit BasisTree(std::size_t n) : n_(n), basic_(n * n, false) {}

  bool is_basic(std::size_t i, std::size_t j) const { return basic_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, bool on) { basic_[i * n_ + j] = on; }

  // Path of cells from column node `col` to row node `row` through the tree.
  std::vector<std::size_t> path(std::size_t row, std::size_t col) const {
    const std::size_t nodes = 2 * n_;
    const std::size_t none = nodes;
    std::vector<std::size_t> parent(nodes, none), via(nodes, none);
    std::vector<std::size_t> queue{n_ + col};
    parent[n_ + col] = n_ + col;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      if (u == row) break;
      for (std::size_t k = 0; k < n_; ++k) {
        const std::size_t v = u < n_ ? n_ + k : k;
        const std::size_t cell = u < n_ ? u * n_ + k : k * n_ + (u - n_);
        if (!basic_[cell] || parent[v] != none) continue;
        parent[v] = u;
        via[v] = cell;
        queue.push_back(v);
      }
    }
    if (parent[row] == none) throw std::logic_error("exact_oracle: basis is not a spanning tree");
    std::vector<std::size_t> cells;
    for (std::size_t v = row; v != n_ + col; v = parent[v]) cells.push_back(via[v]);
    std::reverse(cells.begin(), cells.end());
    return cells;
  }

  // Potentials with u_0 = 0 and u_i + v_j = C_ij on basic cells.
  void potentials(const Vector& cost, Vector& u, Vector& v) const {
    const std::size_t nodes = 2 * n_;
    std::vector<bool> seen(nodes, false);
    u.assign(n_, 0.0);
    v.assign(n_, 0.0);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t a = queue[head];
      for (std::size_t k = 0; k < n_; ++k) {
        if (a < n_) {
          if (!basic_[a * n_ + k] || seen[n_ + k]) continue;
          v[k] = cost[a * n_ + k] - u[a];
          seen[n_ + k] = true;
          queue.push_back(n_ + k);
        } else {
          const std::size_t j = a - n_;
          if (!basic_[k * n_ + j] || seen[k]) continue;
          u[k] = cost[k * n_ + j] - v[j];
          seen[k] = true;
          queue.push_back(k);
        }
      }
    }
    if (queue.size() != nodes) throw std::logic_error("exact_oracle: basis is not a spanning tree");
  }

 private:
  std::size_t n_;
  std::vector<bool> basic_;
};

}  // namespace detail

inline OracleResult exact_oracle(const Problem& p, int max_pivots = 200000) {
  const std::size_t n = p.n;
  if (n > kOracleMaxN) {
    throw std::invalid_argument("exact_oracle: n = " + std::to_string(n) + " exceeds " +
                                std::to_string(kOracleMaxN));
  }
  Vector x(n * n, 0.0);
  detail::BasisTree tree(n);

  // Northwest corner; ties advance one index only, leaving a degenerate zero
  // in the basis so that it always has 2n - 1 cells.
  {
    Vector supply(p.r), demand(p.c);
    std::size_t i = 0, j = 0;
    while (true) {
      const double q = std::min(supply[i], demand[j]);
      x[i * n + j] = q;
      tree.set(i, j, true);
      supply[i] -= q;
      demand[j] -= q;
      if (i == n - 1 && j == n - 1) break;
      if (i == n - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (supply[i] <= demand[j]) {
        supply[i] = 0.0;
        ++i;
      } else {
        demand[j] = 0.0;
        ++j;
      }
    }
  }

  double cost_scale = 1.0;
  for (double v : p.d) cost_scale = std::max(cost_scale, v);
  const double reduced_tol = 1e-12 * cost_scale;

  OracleResult res;
  Vector u, v;
  while (true) {
    tree.potentials(p.d, u, v);
    std::size_t enter = n * n;
    for (std::size_t cell = 0; cell < n * n; ++cell) {
      const std::size_t i = cell / n, j = cell % n;
      if (tree.is_basic(i, j)) continue;
      if (p.d[cell] - u[i] - v[j] < -reduced_tol) {
        enter = cell;
        break;
      }
    }
    if (enter == n * n) break;
    if (res.pivots >= max_pivots) {
      throw std::runtime_error("exact_oracle: pivot limit of " + std::to_string(max_pivots) +
                               " exceeded");
    }
    ++res.pivots;

    const std::size_t ei = enter / n, ej = enter % n;
    // The cycle is enter(+), then the tree path from column ej back to row ei
    // with alternating signs starting at (-).
    const std::vector<std::size_t> cycle = tree.path(ei, ej);
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = n * n;
    for (std::size_t k = 0; k < cycle.size(); k += 2) {
      const std::size_t cell = cycle[k];
      if (x[cell] < theta || (x[cell] == theta && cell < leave)) {
        theta = x[cell];
        leave = cell;
      }
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) x[cycle[k]] += (k % 2 == 0) ? -theta : theta;
    x[enter] = theta;
    x[leave] = 0.0;
    tree.set(leave / n, leave % n, false);
    tree.set(ei, ej, true);
  }

  res.plan.X = SquareMatrix(n, std::move(x));
  for (double& e : res.plan.X.data) e = std::max(e, 0.0);
  for (std::size_t cell = 0; cell < n * n; ++cell)
    if (tree.is_basic(cell / n, cell % n)) res.vertex.push_back({cell / n, cell % n});
  res.optimum = transport_objective(p, res.plan);
  return res;
}

}  // namespace areaot
