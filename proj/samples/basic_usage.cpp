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

// Solve a small random instance three ways and compare with the exact optimum.

#include <cstdio>

#include "areaot/areaot.hpp"

int main() {
  const areaot::Problem p = areaot::gen_random_instance(6, 42);

  areaot::SolverConfig cfg;
  cfg.epsilon = 0.05;
  areaot::apply_preset(cfg, areaot::Preset::kProvable, p.d_max);
  const areaot::Solution dualex = areaot::solve(p, cfg);

  areaot::SinkhornConfig sk;
  sk.eta = 200.0;
  const areaot::SinkhornResult sink = areaot::sinkhorn(p, sk);

  const areaot::OracleResult exact = areaot::exact_oracle(p);

  std::printf("exact optimum      %.6f (%d pivots)\n", exact.optimum, exact.pivots);
  std::printf("dual extrapolation %.6f  gap %.4f  outer %d  matvecs %lld\n", dualex.objective,
              dualex.gap, dualex.outer_iterations, static_cast<long long>(dualex.matvecs));
  std::printf("sinkhorn eta=200   %.6f  iterations %d\n", sink.solution.objective,
              sink.solution.outer_iterations);
  return 0;
}
