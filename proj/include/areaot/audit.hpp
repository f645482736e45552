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

// Randomized probes of the area-convexity inequality and of the
// second-order quadratic form. The probes report the worst residual found;
// a nonnegative worst case is evidence, not a certificate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "areaot/instances.hpp"
#include "areaot/problem.hpp"
#include "areaot/regularizer.hpp"

namespace areaot {

// Random point of simplex x box. Concentration of x varies from nearly
// uniform to nearly a vertex; y coordinates sometimes sit on the boundary.
inline PrimalDualPoint random_domain_point(const Problem& p, SplitMix64& rng) {
  PrimalDualPoint z{Vector(p.m()), Vector(2 * p.n)};
  const double sharpness = std::exp(rng.uniform(std::log(0.2), std::log(8.0)));
  double total = 0.0;
  for (double& v : z.x) {
    v = std::pow(rng.exponential(), sharpness) + 1e-300;
    total += v;
  }
  for (double& v : z.x) v /= total;
  const double boundary = rng.uniform(0.0, 0.5);
  for (double& v : z.y) {
    const double u = rng.uniform(-1.0, 1.0);
    v = rng.uniform() < boundary ? (u < 0.0 ? -1.0 : 1.0) : u;
  }
  return z;
}

struct AuditReport {
  std::size_t probes = 0;
  double min_area_residual = std::numeric_limits<double>::infinity();
  double min_rsoc_form = std::numeric_limits<double>::infinity();
};

inline double area_convexity_probe(const Problem& p, const RegularizerConfig& cfg, double kappa,
                                   SplitMix64& rng) {
  const PrimalDualPoint a = random_domain_point(p, rng);
  const PrimalDualPoint b = random_domain_point(p, rng);
  const PrimalDualPoint c = random_domain_point(p, rng);
  return area_convexity_residual(p, cfg, kappa, a, b, c);
}

inline double rsoc_probe(const Problem& p, SplitMix64& rng) {
  const PrimalDualPoint z = random_domain_point(p, rng);
  auto block = [&](std::size_t len) {
    const double mag = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    Vector v(len);
    for (double& e : v) e = mag * rng.uniform(-1.0, 1.0);
    return v;
  };
  const Vector a = block(p.m()), bv = block(2 * p.n), c = block(p.m()), dv = block(2 * p.n);
  return rsoc_quadratic_form(p, z, a, bv, c, dv);
}

inline AuditReport run_audit(const Problem& p, const RegularizerConfig& cfg, double kappa,
                             std::size_t probes, std::uint64_t seed) {
  SplitMix64 rng(seed);
  AuditReport rep;
  rep.probes = probes;
  for (std::size_t k = 0; k < probes; ++k) {
    rep.min_area_residual = std::min(rep.min_area_residual, area_convexity_probe(p, cfg, kappa, rng));
    rep.min_rsoc_form = std::min(rep.min_rsoc_form, rsoc_probe(p, rng));
  }
  return rep;
}

}  // namespace areaot
