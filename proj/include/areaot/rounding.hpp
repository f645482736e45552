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

// Projection of a near-feasible plan onto U(r, c). With
// delta = |r(X) - r|_1 + |c(X) - c|_1 the output moves at most 2 delta in l1:
//
//   X'  = diag(min(r / r(X), 1)) X
//   X'' = X' diag(min(c / c(X'), 1))
//   X^  = X'' + e_r e_c^T / E,  e_r = r - r(X''), e_c = c - c(X''), E = 1'e_r

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "areaot/problem.hpp"

namespace areaot {

struct RoundingReport {
  double delta_in = 0.0;
  double l1_moved = 0.0;
  double objective_change = 0.0;
};

inline constexpr double kRoundingMassTol = 1e-9;
inline constexpr double kRoundingDeficitFloor = 1e-15;

inline std::pair<TransportPlan, RoundingReport> round_to_feasible(const Problem& p,
                                                                  const SquareMatrix& Xt) {
  const std::size_t n = p.n;
  if (Xt.n != n) {
    throw std::invalid_argument("round_to_feasible: plan is " + std::to_string(Xt.n) + "x" +
                                std::to_string(Xt.n) + ", problem has n = " + std::to_string(n));
  }
  double mass = 0.0;
  for (double v : Xt.data) {
    if (!(v >= 0.0)) throw std::invalid_argument("round_to_feasible: negative or non-finite entry");
    mass += v;
  }
  if (std::abs(mass - 1.0) > kRoundingMassTol) {
    throw std::invalid_argument("round_to_feasible: total mass " + std::to_string(mass) +
                                " deviates from 1");
  }

  Vector rows(n, 0.0), cols(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rows[i] += Xt(i, j);
      cols[j] += Xt(i, j);
    }
  RoundingReport rep;
  for (std::size_t i = 0; i < n; ++i) rep.delta_in += std::abs(rows[i] - p.r[i]);
  for (std::size_t j = 0; j < n; ++j) rep.delta_in += std::abs(cols[j] - p.c[j]);

  // An all-zero row or column has nothing to scale; its factor is 1.
  SquareMatrix X = Xt;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i] <= p.r[i]) continue;
    const double f = p.r[i] / rows[i];
    for (std::size_t j = 0; j < n; ++j) X(i, j) *= f;
  }
  std::fill(cols.begin(), cols.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j] += X(i, j);
  Vector col_factor(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    if (cols[j] > p.c[j]) col_factor[j] = p.c[j] / cols[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) X(i, j) *= col_factor[j];

  Vector er(p.r), ec(p.c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      er[i] -= X(i, j);
      ec[j] -= X(i, j);
    }
  // r(X'') <= r and c(X'') <= c; clamp away roundoff.
  for (double& v : er) v = std::max(v, 0.0);
  for (double& v : ec) v = std::max(v, 0.0);
  double deficit = 0.0;
  for (std::size_t i = 0; i < n; ++i) deficit += er[i];
  if (deficit > kRoundingDeficitFloor) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = er[i] / deficit;
      for (std::size_t j = 0; j < n; ++j) X(i, j) += ri * ec[j];
    }
  }

  for (std::size_t k = 0; k < X.data.size(); ++k) {
    const double diff = X.data[k] - Xt.data[k];
    rep.l1_moved += std::abs(diff);
    rep.objective_change += p.d[k] * diff;
  }
  return {TransportPlan{std::move(X)}, rep};
}

}  // namespace areaot
