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

// Extragradient solvers for the box-simplex saddle point.
//
// Dual extrapolation keeps an accumulated dual state s and takes both
// proximal steps from the regularizer's minimizer:
//
//   z_t     = prox(s_t)
//   w_t     = prox(s_t + (step / kappa) g(z_t))
//   s_{t+1} = s_t + (step / (2 kappa)) g(w_t)
//
// The minimizer of r is (uniform, 0), where grad r is constant on the x-block
// and zero on the y-block, so prox(s) reduces to argmin <s, z> + r(z).
//
// Mirror prox takes both steps locally from the current iterate z_t, i.e. the
// linear term is (step / kappa) g(.) - grad r(z_t).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "areaot/problem.hpp"
#include "areaot/prox.hpp"
#include "areaot/regularizer.hpp"
#include "areaot/rounding.hpp"

namespace areaot {

enum class SolverVariant { kDualExtrapolation, kMirrorProx };

inline const char* to_string(SolverVariant v) {
  return v == SolverVariant::kDualExtrapolation ? "dualex" : "mirrorprox";
}

struct SolverConfig {
  double epsilon = 0.1;
  double kappa = 3.0;
  double step_scale = 1.0;
  double entropy_weight = 10.0;
  std::optional<int> max_outer;  // default ceil(12 Theta / epsilon) + 1
  int gap_check_every = 10;
  SolverVariant variant = SolverVariant::kDualExtrapolation;
  std::optional<int> max_inner;  // default: inner_iteration_budget
  double movement_tol = 1e-9;
  double denom_floor = 1e-30;
  // Also certify the running average at every check, not only w_t.
  bool check_average = true;
  bool record_timing = true;
};

struct TraceRow {
  int iter = 0;
  std::uint64_t matvecs = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double elapsed_ms = 0.0;
};

using ConvergenceTrace = std::vector<TraceRow>;

enum class SolveStatus { kConverged, kIterationLimit };

struct Solution {
  std::string solver;
  PrimalDualPoint z;
  TransportPlan plan;
  RoundingReport rounding;
  double objective = 0.0;
  double gap = 0.0;
  GapReport certificate;
  SolveStatus status = SolveStatus::kConverged;
  int outer_iterations = 0;
  std::uint64_t matvecs = 0;
  ConvergenceTrace trace;
  bool experimental = false;
};

// Observes (t, w_t, running average of w_1..w_t) after every outer step.
using IterationObserver =
    std::function<void(int, const PrimalDualPoint&, const PrimalDualPoint&)>;

inline int default_max_outer(const Problem& p, double epsilon) {
  return static_cast<int>(std::ceil(12.0 * theta_bound(p.d_max, p.n) / epsilon)) + 1;
}

inline int resolved_max_outer(const Problem& p, const SolverConfig& cfg) {
  return cfg.max_outer ? *cfg.max_outer : default_max_outer(p, cfg.epsilon);
}

inline int resolved_max_inner(const Problem& p, const SolverConfig& cfg) {
  const int budget = inner_iteration_budget(p.d_max, p.n, cfg.epsilon);
  return cfg.max_inner ? std::min(*cfg.max_inner, budget) : budget;
}

// Incremental mean of points; the x-block is renormalized on read.
class RunningAverage {
 public:
  void add(const PrimalDualPoint& w) {
    if (count_ == 0) {
      mean_ = w;
    } else {
      const double inv = 1.0 / static_cast<double>(count_ + 1);
      for (std::size_t j = 0; j < w.x.size(); ++j) mean_.x[j] += (w.x[j] - mean_.x[j]) * inv;
      for (std::size_t k = 0; k < w.y.size(); ++k) mean_.y[k] += (w.y[k] - mean_.y[k]) * inv;
    }
    ++count_;
  }

  std::size_t count() const { return count_; }

  PrimalDualPoint value() const {
    if (count_ == 0) throw std::logic_error("averaged_iterate: empty history");
    PrimalDualPoint out = mean_;
    double total = 0.0;
    for (double v : out.x) total += v;
    for (double& v : out.x) v /= total;
    for (double& v : out.y) v = std::clamp(v, -1.0, 1.0);
    return out;
  }

 private:
  PrimalDualPoint mean_;
  std::size_t count_ = 0;
};

inline PrimalDualPoint averaged_iterate(std::span<const PrimalDualPoint> history) {
  RunningAverage avg;
  for (const auto& w : history) avg.add(w);
  return avg.value();
}

// Stop iff primal(x) <= dual(y) + eps. The dual bound takes the minimum over
// simplex vertices; a max there would not be a lower bound.
inline bool termination_check(const Problem& p, const PrimalDualPoint& w, double eps,
                              MatvecCounter* counter = nullptr) {
  return primal_value(p, w.x, counter) <= dual_value(p, w.y, counter) + eps;
}

namespace detail {

inline void validate(const Problem& p, const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("solver: epsilon must be positive");
  if (!(cfg.kappa > 0.0)) throw std::invalid_argument("solver: kappa must be positive");
  if (!(cfg.step_scale > 0.0)) throw std::invalid_argument("solver: step_scale must be positive");
  if (!(cfg.entropy_weight > 0.0)) throw std::invalid_argument("solver: entropy_weight must be positive");
  if (cfg.max_outer && *cfg.max_outer < 1) throw std::invalid_argument("solver: max_outer must be >= 1");
  if (cfg.max_inner && *cfg.max_inner < 1) throw std::invalid_argument("solver: max_inner must be >= 1");
  if (cfg.gap_check_every < 1) throw std::invalid_argument("solver: gap_check_every must be >= 1");
  if (cfg.movement_tol < 0.0) throw std::invalid_argument("solver: movement_tol must be >= 0");
  if (p.n == 0) throw std::invalid_argument("solver: empty problem");
}

inline SquareMatrix unvectorize(const Problem& p, const Vector& x) { return SquareMatrix(p.n, x); }

inline Solution degenerate_solution(const Problem& p, const char* name) {
  Solution sol;
  sol.solver = name;
  sol.plan = independent_coupling(p);
  sol.z = {sol.plan.X.data, Vector(2 * p.n, 0.0)};
  sol.objective = 0.0;
  sol.gap = 0.0;
  sol.status = SolveStatus::kConverged;
  return sol;
}

// Tracks the best certified iterate and writes trace rows.
class Certifier {
 public:
  Certifier(const Problem& p, const SolverConfig& cfg, MatvecCounter& counter)
      : p_(p), cfg_(cfg), counter_(counter), start_(std::chrono::steady_clock::now()) {}

  // Returns true once the best certified gap is <= epsilon.
  bool check(int t, const PrimalDualPoint& w, const RunningAverage& avg) {
    offer(t, w, "w_t");
    if (cfg_.check_average && avg.count() > 1) offer(t, avg.value(), "average");
    TraceRow row;
    row.iter = t;
    row.matvecs = counter_.count;
    row.primal = best_.primal;
    row.dual = best_.dual;
    row.gap = best_.gap;
    if (cfg_.record_timing) {
      row.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
    }
    trace_.push_back(row);
    return best_.gap <= cfg_.epsilon;
  }

  // Final comparison against the averaged iterate.
  void finish(int t, const RunningAverage& avg) {
    if (avg.count() > 0) offer(t, avg.value(), "average");
  }

  const PrimalDualPoint& best_point() const { return best_point_; }
  const GapReport& best() const { return best_; }
  ConvergenceTrace take_trace() { return std::move(trace_); }

 private:
  void offer(int t, const PrimalDualPoint& z, const char* which) {
    const GapReport rep = evaluate_gap(p_, z, &counter_);
    if (!std::isfinite(rep.gap)) {
      std::ostringstream msg;
      msg << "solver: non-finite duality gap at outer iteration " << t << " (" << which
          << ": primal = " << rep.primal << ", dual = " << rep.dual << ")";
      throw std::runtime_error(msg.str());
    }
    if (!has_best_ || rep.gap < best_.gap) {
      best_ = rep;
      best_point_ = z;
      has_best_ = true;
    }
  }

  const Problem& p_;
  const SolverConfig& cfg_;
  MatvecCounter& counter_;
  std::chrono::steady_clock::time_point start_;
  GapReport best_;
  PrimalDualPoint best_point_;
  bool has_best_ = false;
  ConvergenceTrace trace_;
};

inline Solution finalize(const Problem& p, const char* name, Certifier& cert, int t,
                         bool converged, const MatvecCounter& counter) {
  Solution sol;
  sol.solver = name;
  sol.z = cert.best_point();
  sol.certificate = cert.best();
  sol.gap = cert.best().gap;
  sol.status = converged ? SolveStatus::kConverged : SolveStatus::kIterationLimit;
  sol.outer_iterations = t;
  sol.trace = cert.take_trace();
  auto [plan, rep] = round_to_feasible(p, unvectorize(p, sol.z.x));
  sol.plan = std::move(plan);
  sol.rounding = rep;
  sol.objective = transport_objective(p, sol.plan);
  sol.matvecs = counter.count;
  return sol;
}

inline void axpy(double alpha, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace detail

inline Solution solve_dual_extrapolation(const Problem& p, const SolverConfig& cfg,
                                         const IterationObserver& observer = {}) {
  detail::validate(p, cfg);
  if (p.d_max == 0.0) return detail::degenerate_solution(p, "dualex");

  const RegularizerConfig reg = make_regularizer_config(p, cfg.entropy_weight);
  const AltMinConfig am{resolved_max_inner(p, cfg), cfg.movement_tol, cfg.denom_floor};
  const int max_outer = resolved_max_outer(p, cfg);
  const double step_w = cfg.step_scale / cfg.kappa;
  const double step_s = cfg.step_scale / (2.0 * cfg.kappa);

  MatvecCounter counter;
  detail::Certifier cert(p, cfg, counter);
  ProxWorkspace ws;
  RunningAverage avg;
  GradientPair g;

  DualState s{Vector(p.m(), 0.0), Vector(2 * p.n, 0.0)};
  DualState s_half = s;
  PrimalDualPoint half = uniform_point(p);  // w_{t-1}, the warm start for z_t
  PrimalDualPoint z;

  int t = 0;
  bool converged = false;
  while (t < max_outer) {
    ++t;
    z = half;
    approx_prox(p, reg, am, s, z, ws, nullptr, &counter);

    gradient_operator(p, z, g, &counter);
    s_half.sx = s.sx;
    s_half.sy = s.sy;
    detail::axpy(step_w, g.gx, s_half.sx);
    detail::axpy(step_w, g.gy, s_half.sy);
    half = z;
    approx_prox(p, reg, am, s_half, half, ws, nullptr, &counter);

    gradient_operator(p, half, g, &counter);
    detail::axpy(step_s, g.gx, s.sx);
    detail::axpy(step_s, g.gy, s.sy);
    avg.add(half);
    if (observer) observer(t, half, avg.value());

    if (t % cfg.gap_check_every == 0 || t == max_outer) {
      if (cert.check(t, half, avg)) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) cert.finish(t, avg);
  return detail::finalize(p, "dualex", cert, t, converged, counter);
}

inline Solution solve_mirror_prox(const Problem& p, const SolverConfig& cfg,
                                  const IterationObserver& observer = {}) {
  detail::validate(p, cfg);
  if (p.d_max == 0.0) {
    Solution sol = detail::degenerate_solution(p, "mirrorprox");
    sol.experimental = true;
    return sol;
  }

  const RegularizerConfig reg = make_regularizer_config(p, cfg.entropy_weight);
  const AltMinConfig am{resolved_max_inner(p, cfg), cfg.movement_tol, cfg.denom_floor};
  const int max_outer = resolved_max_outer(p, cfg);
  const double step = cfg.step_scale / cfg.kappa;

  MatvecCounter counter;
  detail::Certifier cert(p, cfg, counter);
  ProxWorkspace ws;
  RunningAverage avg;
  GradientPair g;

  PrimalDualPoint z = uniform_point(p);
  PrimalDualPoint w;
  DualState s;

  int t = 0;
  bool converged = false;
  while (t < max_outer) {
    ++t;
    const DualState offset = regularizer_gradient(p, reg, z, &counter);

    gradient_operator(p, z, g, &counter);
    s.sx = g.gx;
    s.sy = g.gy;
    for (std::size_t j = 0; j < s.sx.size(); ++j) s.sx[j] = step * s.sx[j] - offset.sx[j];
    for (std::size_t k = 0; k < s.sy.size(); ++k) s.sy[k] = step * s.sy[k] - offset.sy[k];
    w = z;
    approx_prox(p, reg, am, s, w, ws, nullptr, &counter);

    gradient_operator(p, w, g, &counter);
    for (std::size_t j = 0; j < s.sx.size(); ++j) s.sx[j] = step * g.gx[j] - offset.sx[j];
    for (std::size_t k = 0; k < s.sy.size(); ++k) s.sy[k] = step * g.gy[k] - offset.sy[k];
    z = w;
    approx_prox(p, reg, am, s, z, ws, nullptr, &counter);

    avg.add(w);
    if (observer) observer(t, w, avg.value());

    if (t % cfg.gap_check_every == 0 || t == max_outer) {
      if (cert.check(t, w, avg)) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) cert.finish(t, avg);
  Solution sol = detail::finalize(p, "mirrorprox", cert, t, converged, counter);
  sol.experimental = true;
  return sol;
}

inline Solution solve(const Problem& p, const SolverConfig& cfg,
                      const IterationObserver& observer = {}) {
  return cfg.variant == SolverVariant::kDualExtrapolation ? solve_dual_extrapolation(p, cfg, observer)
                                                          : solve_mirror_prox(p, cfg, observer);
}

}  // namespace areaot
