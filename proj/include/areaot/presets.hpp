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

#include <stdexcept>
#include <string>
#include <string_view>

#include "areaot/problem.hpp"
#include "areaot/solver.hpp"

namespace areaot {

// provable:   entropy weight 10, step 1 (the setting with guarantees)
// reasonable: entropy weight 4,  step d_max / 3
// optimized:  entropy weight 3,  step d_max
enum class Preset { kProvable, kReasonable, kOptimized };

inline Preset parse_preset(std::string_view name) {
  if (name == "provable") return Preset::kProvable;
  if (name == "reasonable") return Preset::kReasonable;
  if (name == "optimized") return Preset::kOptimized;
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected provable, reasonable or optimized)");
}

inline const char* to_string(Preset preset) {
  switch (preset) {
    case Preset::kProvable: return "provable";
    case Preset::kReasonable: return "reasonable";
    case Preset::kOptimized: return "optimized";
  }
  return "?";
}

inline void apply_preset(SolverConfig& cfg, Preset preset, double d_max) {
  // A zero-cost problem never reaches the iteration; keep the step positive.
  const double unit = d_max > 0.0 ? d_max : 1.0;
  switch (preset) {
    case Preset::kProvable:
      cfg.entropy_weight = 10.0;
      cfg.step_scale = 1.0;
      break;
    case Preset::kReasonable:
      cfg.entropy_weight = 4.0;
      cfg.step_scale = unit / 3.0;
      break;
    case Preset::kOptimized:
      cfg.entropy_weight = 3.0;
      cfg.step_scale = unit;
      break;
  }
}

// Inner alternations observed to suffice in practice.
inline constexpr int kPracticalMaxInner = 8;

}  // namespace areaot
