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

// Gradient operator of the bilinear saddle objective and the area-convex
// regularizer
//
//   r(x, y) = scale * (w * sum_j x_j log x_j + x' A^T (y^2)),  scale = 2 d_max,
//
// together with runtime probes for the area-convexity inequality.

#include <cmath>
#include <span>

#include "areaot/problem.hpp"

namespace areaot {

struct RegularizerConfig {
  double entropy_weight = 10.0;
  double scale = 0.0;  // 2 d_max
};

inline RegularizerConfig make_regularizer_config(const Problem& p, double entropy_weight = 10.0) {
  if (!(entropy_weight > 0.0)) throw std::invalid_argument("entropy_weight must be positive");
  return {entropy_weight, 2.0 * p.d_max};
}

struct GradientPair {
  Vector gx;  // d + 2 d_max A^T y
  Vector gy;  // 2 d_max (b - Ax)
};

inline void gradient_operator(const Problem& p, const PrimalDualPoint& z, GradientPair& out,
                              MatvecCounter* counter = nullptr) {
  out.gx.resize(p.m());
  out.gy.resize(2 * p.n);
  apply_adjoint(p, z.y, out.gx, counter);
  const double s = 2.0 * p.d_max;
  for (std::size_t j = 0; j < out.gx.size(); ++j) out.gx[j] = p.d[j] + s * out.gx[j];
  apply_incidence(p, z.x, out.gy, counter);
  for (std::size_t k = 0; k < out.gy.size(); ++k) out.gy[k] = s * (p.b[k] - out.gy[k]);
}

inline GradientPair gradient_operator(const Problem& p, const PrimalDualPoint& z,
                                      MatvecCounter* counter = nullptr) {
  GradientPair g;
  gradient_operator(p, z, g, counter);
  return g;
}

// Range bound on r used for iteration counts: 20 d_max log n + 4 d_max.
inline double theta_bound(double d_max, std::size_t n) {
  return 20.0 * d_max * std::log(static_cast<double>(n)) + 4.0 * d_max;
}

inline double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

inline double regularizer_value(const Problem& p, const RegularizerConfig& cfg,
                                const PrimalDualPoint& z) {
  double entropy = 0.0;
  for (double v : z.x) entropy += xlogx(v);
  // x' A^T (y^2) = (Ax)' (y^2)
  const Vector ax = apply_incidence(p, z.x);
  double quad = 0.0;
  for (std::size_t k = 0; k < ax.size(); ++k) quad += ax[k] * z.y[k] * z.y[k];
  return cfg.scale * (cfg.entropy_weight * entropy + quad);
}

// Gradient of r, dropping the constant scale * w in the x-block (invisible on
// the simplex). Used by the mirror-prox variant.
inline DualState regularizer_gradient(const Problem& p, const RegularizerConfig& cfg,
                                      const PrimalDualPoint& z, MatvecCounter* counter = nullptr) {
  DualState grad;
  Vector ysq(z.y.size());
  for (std::size_t k = 0; k < ysq.size(); ++k) ysq[k] = z.y[k] * z.y[k];
  grad.sx = apply_adjoint(p, ysq, counter);
  for (std::size_t j = 0; j < grad.sx.size(); ++j) {
    const double lx = std::log(std::max(z.x[j], std::numeric_limits<double>::min()));
    grad.sx[j] = cfg.scale * (cfg.entropy_weight * lx + grad.sx[j]);
  }
  grad.sy = apply_incidence(p, z.x, counter);
  for (std::size_t k = 0; k < grad.sy.size(); ++k) grad.sy[k] *= 2.0 * cfg.scale * z.y[k];
  return grad;
}

// f(z) = <sx, x> + <sy, y> + r(z)
inline double prox_objective(const Problem& p, const RegularizerConfig& cfg, const DualState& s,
                             const PrimalDualPoint& z) {
  return dot(s.sx, z.x) + dot(s.sy, z.y) + regularizer_value(p, cfg, z);
}

// kappa (r(a) + r(b) + r(c) - 3 r((a+b+c)/3)) - <g(b) - g(a), b - c>.
// Nonnegative for all triples when kappa = 3 and entropy_weight = 10.
inline double area_convexity_residual(const Problem& p, const RegularizerConfig& cfg,
                                      double kappa, const PrimalDualPoint& a,
                                      const PrimalDualPoint& b, const PrimalDualPoint& c) {
  PrimalDualPoint mean{Vector(p.m()), Vector(2 * p.n)};
  for (std::size_t j = 0; j < p.m(); ++j) mean.x[j] = (a.x[j] + b.x[j] + c.x[j]) / 3.0;
  for (std::size_t k = 0; k < 2 * p.n; ++k) mean.y[k] = (a.y[k] + b.y[k] + c.y[k]) / 3.0;

  const double lhs = kappa * (regularizer_value(p, cfg, a) + regularizer_value(p, cfg, b) +
                              regularizer_value(p, cfg, c) - 3.0 * regularizer_value(p, cfg, mean));

  const GradientPair ga = gradient_operator(p, a);
  const GradientPair gb = gradient_operator(p, b);
  double rhs = 0.0;
  for (std::size_t j = 0; j < p.m(); ++j) rhs += (gb.gx[j] - ga.gx[j]) * (b.x[j] - c.x[j]);
  for (std::size_t k = 0; k < 2 * p.n; ++k) rhs += (gb.gy[k] - ga.gy[k]) * (b.y[k] - c.y[k]);
  return lhs - rhs;
}

// Quadratic form of the 4-block second-order area-convexity matrix (with
// r and J both divided by 2 d_max), summed edge by edge over the implicit A.
// a, c have length m; bv, dv have length 2n.
inline double rsoc_quadratic_form(const Problem& p, const PrimalDualPoint& z,
                                  std::span<const double> a, std::span<const double> bv,
                                  std::span<const double> c, std::span<const double> dv) {
  const std::size_t n = p.n;
  detail::require_length(a.size(), n * n, "rsoc_quadratic_form: a");
  detail::require_length(c.size(), n * n, "rsoc_quadratic_form: c");
  detail::require_length(bv.size(), 2 * n, "rsoc_quadratic_form: b");
  detail::require_length(dv.size(), 2 * n, "rsoc_quadratic_form: d");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t e = i * n + j;
      const double xe = z.x[e];
      const double ae = a[e];
      const double ce = c[e];
      for (const std::size_t v : {i, n + j}) {
        const double yv = z.y[v];
        total += 5.0 * ae * ae / xe + 4.0 * ae * bv[v] * yv + 2.0 * bv[v] * bv[v] * xe -
                 2.0 * ae * dv[v] + 2.0 * ce * bv[v] + 5.0 * ce * ce / xe +
                 4.0 * ce * dv[v] * yv + 2.0 * dv[v] * dv[v] * xe;
      }
    }
  }
  return total;
}

}  // namespace areaot
