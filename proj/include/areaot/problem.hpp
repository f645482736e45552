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

// Problem representation for discrete optimal transport on the complete
// n x n bipartite graph, written as l1-penalized regression over the simplex:
//
//   min_{x in simplex(m)} d'x + 2 |d|_inf |Ax - b|_1
//     = min_x max_{y in [-1,1]^{2n}} d'x + 2 |d|_inf (y'Ax - b'y)
//
// with m = n^2, d the row-major cost vector and A the 0/1 edge-incidence
// matrix. A is never stored; see apply_incidence / apply_adjoint.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace areaot {

using Vector = std::vector<double>;

// Dense square matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  Vector data;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, double fill = 0.0)
      : n(size), data(size * size, fill) {}
  SquareMatrix(std::size_t size, Vector values) : n(size), data(std::move(values)) {
    if (data.size() != n * n) {
      throw std::invalid_argument("SquareMatrix: expected " + std::to_string(n * n) +
                                  " entries, got " + std::to_string(data.size()));
    }
  }

  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

struct TransportPlan {
  SquareMatrix X;
};

// Counts applications of A or A^T. Solvers own one; free functions take an
// optional pointer.
struct MatvecCounter {
  std::uint64_t count = 0;
  void tick(std::uint64_t k = 1) { count += k; }
};

struct Problem {
  std::size_t n = 0;
  Vector d;  // length n^2, row-major vectorization of the cost matrix
  Vector r;
  Vector c;
  Vector b;  // (r, c)
  double d_max = 0.0;

  std::size_t m() const { return n * n; }
};

// x on the m-simplex, y in the [-1, 1]^{2n} box.
struct PrimalDualPoint {
  Vector x;
  Vector y;
};

// Accumulated dual vector s = (sx, sy) driving the proximal steps.
struct DualState {
  Vector sx;
  Vector sy;
};

namespace detail {

inline void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

inline Vector normalized_marginal(std::span<const double> v, const char* name) {
  double total = 0.0;
  for (double e : v) {
    if (!std::isfinite(e)) throw std::invalid_argument(std::string(name) + ": non-finite entry");
    if (e < 0.0) throw std::invalid_argument(std::string(name) + ": negative entry");
    total += e;
  }
  if (!(total > 0.0)) throw std::invalid_argument(std::string(name) + ": zero total mass");
  Vector out(v.begin(), v.end());
  for (double& e : out) e /= total;
  return out;
}

}  // namespace detail

// Validates the inputs and renormalizes r and c to unit mass.
inline Problem build_problem(const SquareMatrix& C, std::span<const double> r,
                             std::span<const double> c) {
  if (C.n == 0) throw std::invalid_argument("build_problem: empty cost matrix");
  detail::require_length(C.data.size(), C.n * C.n, "build_problem: cost");
  detail::require_length(r.size(), C.n, "build_problem: r");
  detail::require_length(c.size(), C.n, "build_problem: c");

  Problem p;
  p.n = C.n;
  p.d = C.data;
  for (double e : p.d) {
    if (!std::isfinite(e)) throw std::invalid_argument("build_problem: non-finite cost");
    if (e < 0.0) throw std::invalid_argument("build_problem: negative cost");
    p.d_max = std::max(p.d_max, e);
  }
  p.r = detail::normalized_marginal(r, "build_problem: r");
  p.c = detail::normalized_marginal(c, "build_problem: c");
  p.b.reserve(2 * p.n);
  p.b.insert(p.b.end(), p.r.begin(), p.r.end());
  p.b.insert(p.b.end(), p.c.begin(), p.c.end());
  return p;
}

inline SquareMatrix cost_matrix(const Problem& p) { return SquareMatrix(p.n, p.d); }

// out = A x: row sums followed by column sums of the unvectorized x.
inline void apply_incidence(const Problem& p, std::span<const double> x, std::span<double> out,
                            MatvecCounter* counter = nullptr) {
  const std::size_t n = p.n;
  detail::require_length(x.size(), n * n, "apply_incidence: x");
  detail::require_length(out.size(), 2 * n, "apply_incidence: out");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.data() + i * n;
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row_sum += row[j];
      out[n + j] += row[j];
    }
    out[i] = row_sum;
  }
  if (counter) counter->tick();
}

inline Vector apply_incidence(const Problem& p, std::span<const double> x,
                              MatvecCounter* counter = nullptr) {
  Vector out(2 * p.n);
  apply_incidence(p, x, out, counter);
  return out;
}

// out = A^T y: entry (i, j) is y_i + y_{n+j}.
inline void apply_adjoint(const Problem& p, std::span<const double> y, std::span<double> out,
                          MatvecCounter* counter = nullptr) {
  const std::size_t n = p.n;
  detail::require_length(y.size(), 2 * n, "apply_adjoint: y");
  detail::require_length(out.size(), n * n, "apply_adjoint: out");
  for (std::size_t i = 0; i < n; ++i) {
    double* row = out.data() + i * n;
    const double yi = y[i];
    for (std::size_t j = 0; j < n; ++j) row[j] = yi + y[n + j];
  }
  if (counter) counter->tick();
}

inline Vector apply_adjoint(const Problem& p, std::span<const double> y,
                            MatvecCounter* counter = nullptr) {
  Vector out(p.n * p.n);
  apply_adjoint(p, y, out, counter);
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// d'x + 2 d_max |Ax - b|_1
inline double primal_value(const Problem& p, std::span<const double> x,
                           MatvecCounter* counter = nullptr) {
  const Vector ax = apply_incidence(p, x, counter);
  double infeas = 0.0;
  for (std::size_t k = 0; k < ax.size(); ++k) infeas += std::abs(ax[k] - p.b[k]);
  return dot(p.d, x) + 2.0 * p.d_max * infeas;
}

// Closed-form inner minimum over the simplex:
//   min_u d'u + 2 d_max (y'Au - b'y) = -2 d_max b'y + min_j [d + 2 d_max A^T y]_j
inline double dual_value(const Problem& p, std::span<const double> y,
                         MatvecCounter* counter = nullptr) {
  const Vector aty = apply_adjoint(p, y, counter);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < aty.size(); ++j) {
    best = std::min(best, p.d[j] + 2.0 * p.d_max * aty[j]);
  }
  return -2.0 * p.d_max * dot(p.b, y) + best;
}

struct GapReport {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

inline GapReport evaluate_gap(const Problem& p, const PrimalDualPoint& z,
                              MatvecCounter* counter = nullptr) {
  GapReport rep;
  rep.primal = primal_value(p, z.x, counter);
  rep.dual = dual_value(p, z.y, counter);
  rep.gap = rep.primal - rep.dual;
  return rep;
}

inline double duality_gap(const Problem& p, const PrimalDualPoint& z,
                          MatvecCounter* counter = nullptr) {
  return evaluate_gap(p, z, counter).gap;
}

// <C, X>
inline double transport_objective(const Problem& p, const TransportPlan& plan) {
  if (plan.X.n != p.n) {
    throw std::invalid_argument("transport_objective: plan is " + std::to_string(plan.X.n) +
                                "x" + std::to_string(plan.X.n) + ", problem has n = " +
                                std::to_string(p.n));
  }
  return dot(p.d, plan.X.data);
}

// Rank-one plan r c^T.
inline TransportPlan independent_coupling(const Problem& p) {
  TransportPlan plan{SquareMatrix(p.n)};
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) plan.X(i, j) = p.r[i] * p.c[j];
  return plan;
}

inline PrimalDualPoint uniform_point(const Problem& p) {
  return {Vector(p.m(), 1.0 / static_cast<double>(p.m())), Vector(2 * p.n, 0.0)};
}

inline bool is_valid_point(const Problem& p, const PrimalDualPoint& z, double tol = 1e-12) {
  if (z.x.size() != p.m() || z.y.size() != 2 * p.n) return false;
  double total = 0.0;
  for (double e : z.x) {
    if (!(e >= 0.0)) return false;
    total += e;
  }
  if (std::abs(total - 1.0) > tol) return false;
  return std::all_of(z.y.begin(), z.y.end(), [](double e) { return e >= -1.0 && e <= 1.0; });
}

}  // namespace areaot
