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

#include "areaot/audit.hpp"
#include "areaot/exact_oracle.hpp"
#include "areaot/instances.hpp"
#include "areaot/io.hpp"
#include "areaot/presets.hpp"
#include "areaot/problem.hpp"
#include "areaot/prox.hpp"
#include "areaot/regularizer.hpp"
#include "areaot/rounding.hpp"
#include "areaot/sinkhorn.hpp"
#include "areaot/solver.hpp"
