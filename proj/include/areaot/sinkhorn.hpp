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

// Sinkhorn iteration in log-domain potentials:
//
//   X_ij = exp(u_i + v_j - eta C_ij)
//   u_i <- log r_i - logsumexp_j(v_j - eta C_ij)
//   v_j <- log c_j - logsumexp_i(u_i - eta C_ij)
//
// so that exp(-eta C) is never formed. Each half-iteration counts as one
// matvec. The reported dual bound is the c-transform of u / eta, which is a
// valid lower bound on the optimal transport cost.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "areaot/problem.hpp"
#include "areaot/rounding.hpp"
#include "areaot/solver.hpp"

namespace areaot {

struct SinkhornConfig {
  double eta = 70.0;
  int max_iter = 10000;
  double marginal_tol = 1e-6;
  bool record_timing = true;
};

inline constexpr double kSinkhornTheoryEta = 70.0;
inline constexpr double kSinkhornPracticalEta = 5.0;

struct SinkhornResult {
  TransportPlan plan;  // rounded
  ConvergenceTrace trace;
  Solution solution;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double finite_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// Kantorovich lower bound sum r_i f_i + sum c_j g_j with f = u / eta and
// g_j = min_i (C_ij - f_i). Rows with r_i = 0 are left out of f.
inline double c_transform_bound(const Problem& p, const Vector& u, double eta) {
  const std::size_t n = p.n;
  double bound = 0.0;
  Vector g(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    if (p.r[i] <= 0.0) continue;
    const double fi = u[i] / eta;
    bound += p.r[i] * fi;
    for (std::size_t j = 0; j < n; ++j) g[j] = std::min(g[j], p.d[i * n + j] - fi);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (p.c[j] > 0.0) bound += p.c[j] * g[j];
  return bound;
}

}  // namespace detail

inline SinkhornResult sinkhorn(const Problem& p, const SinkhornConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("sinkhorn: eta must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("sinkhorn: max_iter must be >= 1");
  if (!(cfg.marginal_tol >= 0.0)) throw std::invalid_argument("sinkhorn: marginal_tol must be >= 0");

  const std::size_t n = p.n;
  const auto start = std::chrono::steady_clock::now();
  Vector log_r(n), log_c(n), u(n, 0.0), v(n, 0.0), buf(n);
  for (std::size_t i = 0; i < n; ++i) log_r[i] = detail::finite_log(p.r[i]);
  for (std::size_t j = 0; j < n; ++j) log_c[j] = detail::finite_log(p.c[j]);

  auto logsumexp = [](const Vector& a) {
    double top = detail::kNegInf;
    for (double e : a) top = std::max(top, e);
    if (top == detail::kNegInf) return top;
    double s = 0.0;
    for (double e : a) s += std::exp(e - top);
    return top + std::log(s);
  };
  auto check_finite = [&](const Vector& pot, const char* which, int it) {
    for (std::size_t k = 0; k < n; ++k) {
      // -inf is legitimate for a zero-mass marginal entry.
      if (std::isnan(pot[k]) || pot[k] == std::numeric_limits<double>::infinity()) {
        std::ostringstream msg;
        msg << "sinkhorn: non-finite potential " << which << "[" << k << "] = " << pot[k]
            << " at iteration " << it << " (eta = " << cfg.eta << ")";
        throw std::runtime_error(msg.str());
      }
    }
  };

  MatvecCounter counter;
  ConvergenceTrace trace;
  SquareMatrix X(n);
  Vector rows(n), cols(n);
  int it = 0;
  bool converged = false;
  double err = std::numeric_limits<double>::infinity();
  while (it < cfg.max_iter) {
    ++it;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) buf[j] = v[j] - cfg.eta * p.d[i * n + j];
      u[i] = log_r[i] == detail::kNegInf ? detail::kNegInf : log_r[i] - logsumexp(buf);
    }
    counter.tick();
    check_finite(u, "u", it);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) buf[i] = u[i] - cfg.eta * p.d[i * n + j];
      v[j] = log_c[j] == detail::kNegInf ? detail::kNegInf : log_c[j] - logsumexp(buf);
    }
    counter.tick();
    check_finite(v, "v", it);

    std::fill(rows.begin(), rows.end(), 0.0);
    std::fill(cols.begin(), cols.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double e = std::exp(u[i] + v[j] - cfg.eta * p.d[i * n + j]);
        X(i, j) = e;
        rows[i] += e;
        cols[j] += e;
      }
    err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err += std::abs(rows[i] - p.r[i]);
    for (std::size_t j = 0; j < n; ++j) err += std::abs(cols[j] - p.c[j]);

    TraceRow row;
    row.iter = it;
    row.matvecs = counter.count;
    row.primal = primal_value(p, X.data);
    row.dual = detail::c_transform_bound(p, u, cfg.eta);
    row.gap = row.primal - row.dual;
    if (cfg.record_timing) {
      row.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    trace.push_back(row);
    if (err <= cfg.marginal_tol) {
      converged = true;
      break;
    }
  }

  // Columns match c after the v-update, so the mass is 1 up to roundoff.
  double mass = 0.0;
  for (double e : X.data) mass += e;
  for (double& e : X.data) e /= mass;
  auto [plan, rep] = round_to_feasible(p, X);

  SinkhornResult res;
  res.trace = trace;
  res.solution.solver = "sinkhorn";
  res.solution.z = {X.data, Vector(2 * n, 0.0)};
  res.solution.rounding = rep;
  res.solution.objective = transport_objective(p, plan);
  res.solution.certificate.primal = res.solution.objective;
  res.solution.certificate.dual = detail::c_transform_bound(p, u, cfg.eta);
  res.solution.certificate.gap = res.solution.objective - res.solution.certificate.dual;
  res.solution.gap = res.solution.certificate.gap;
  res.solution.status = converged ? SolveStatus::kConverged : SolveStatus::kIterationLimit;
  res.solution.outer_iterations = it;
  res.solution.matvecs = counter.count;
  res.solution.trace = std::move(trace);
  res.solution.plan = plan;
  res.plan = std::move(plan);
  return res;
}

}  // namespace areaot
