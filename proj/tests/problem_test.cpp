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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace areaot {
namespace {

using testing::dense_incidence;
using testing::dense_mul;
using testing::dense_mul_t;
using testing::max_abs_diff;
using testing::random_point;

Problem two_by_two() {
  return build_problem(SquareMatrix(2, {0, 1, 1, 0}), Vector{0.5, 0.5}, Vector{0.5, 0.5});
}

TEST(BuildProblem, VectorizesTwoByTwo) {
  const Problem p = two_by_two();
  EXPECT_EQ(p.d, (Vector{0, 1, 1, 0}));
  EXPECT_EQ(p.d_max, 1.0);
  EXPECT_EQ(p.b, (Vector{0.5, 0.5, 0.5, 0.5}));
}

TEST(BuildProblem, RejectsNegativeCost) {
  try {
    build_problem(SquareMatrix(2, {0, -0.1, 1, 0}), Vector{1, 1}, Vector{1, 1});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("negative cost"), std::string::npos);
  }
}

TEST(BuildProblem, RejectsBadMarginals) {
  const SquareMatrix C(2, {0, 1, 1, 0});
  EXPECT_THROW(build_problem(C, Vector{0, 0}, Vector{1, 1}), std::invalid_argument);
  EXPECT_THROW(build_problem(C, Vector{1, -1}, Vector{1, 1}), std::invalid_argument);
  EXPECT_THROW(build_problem(C, Vector{1}, Vector{1, 1}), std::invalid_argument);
  EXPECT_THROW(build_problem(C, Vector{1, NAN}, Vector{1, 1}), std::invalid_argument);
}

TEST(BuildProblem, UniformThreeByThree) {
  const Problem p = build_problem(SquareMatrix(3, 1.0), Vector(3, 1.0), Vector(3, 1.0));
  ASSERT_EQ(p.b.size(), 6u);
  for (double v : p.b) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(BuildProblem, RenormalizesMarginals) {
  const Problem p = build_problem(SquareMatrix(2, 1.0), Vector{2, 6}, Vector{1, 1});
  EXPECT_DOUBLE_EQ(p.r[0], 0.25);
  EXPECT_DOUBLE_EQ(p.r[1], 0.75);
}

TEST(Incidence, UniformPlanGivesUniformMarginals) {
  const Problem p = build_problem(SquareMatrix(3, 1.0), Vector(3, 1.0), Vector(3, 1.0));
  const Vector ax = apply_incidence(p, Vector(9, 1.0 / 9.0));
  for (double v : ax) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(Incidence, SingleEdge) {
  const Problem p = gen_random_instance(4, 1);
  Vector x(16, 0.0);
  x[0] = 1.0;
  Vector want(8, 0.0);
  want[0] = want[4] = 1.0;
  EXPECT_EQ(apply_incidence(p, x), want);
}

TEST(Incidence, MatchesDenseMatrix) {
  SplitMix64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const Problem p = gen_random_instance(n, 3 + n);
    const auto A = dense_incidence(n);
    const auto z = random_point(p, rng);
    EXPECT_LE(max_abs_diff(apply_incidence(p, z.x), dense_mul(A, z.x)), 1e-14);
    EXPECT_LE(max_abs_diff(apply_adjoint(p, z.y), dense_mul_t(A, z.y)), 1e-14);
  }
}

TEST(Adjoint, OnesAndZeros) {
  const Problem p = gen_random_instance(4, 2);
  for (double v : apply_adjoint(p, Vector(8, 1.0))) EXPECT_EQ(v, 2.0);
  for (double v : apply_adjoint(p, Vector(8, 0.0))) EXPECT_EQ(v, 0.0);
}

TEST(Incidence, CountsMatvecs) {
  const Problem p = gen_random_instance(3, 2);
  MatvecCounter counter;
  apply_incidence(p, Vector(9, 0.1), &counter);
  apply_adjoint(p, Vector(6, 0.1), &counter);
  EXPECT_EQ(counter.count, 2u);
}

TEST(Incidence, RejectsWrongLength) {
  const Problem p = gen_random_instance(3, 2);
  EXPECT_THROW(apply_incidence(p, Vector(8, 0.1)), std::invalid_argument);
  EXPECT_THROW(apply_adjoint(p, Vector(5, 0.1)), std::invalid_argument);
}

TEST(IncidenceProperty, AdjointnessNormAndMass) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const Problem p = gen_random_instance(n, 100 + trial);
    const auto z = random_point(p, rng);
    const Vector ax = apply_incidence(p, z.x);
    const Vector aty = apply_adjoint(p, z.y);
    EXPECT_NEAR(dot(aty, z.x), dot(z.y, ax), 1e-12);
    double ymax = 0.0, amax = 0.0, mass = 0.0;
    for (double v : z.y) ymax = std::max(ymax, std::abs(v));
    for (double v : aty) amax = std::max(amax, std::abs(v));
    for (double v : ax) mass += v;
    EXPECT_LE(amax, 2.0 * ymax + 1e-15);
    EXPECT_NEAR(mass, 2.0, 1e-12);
  }
}

TEST(PrimalValue, SingleEdgeAndFeasible) {
  const Problem one = build_problem(SquareMatrix(1, {5.0}), Vector{1}, Vector{1});
  EXPECT_DOUBLE_EQ(primal_value(one, Vector{1.0}), 5.0);
  const Problem p = gen_random_instance(5, 9);
  const TransportPlan rc = independent_coupling(p);
  EXPECT_NEAR(primal_value(p, rc.X.data), dot(p.d, rc.X.data), 1e-15);
}

TEST(PrimalValue, MatchesUnvectorizedRecomputation) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Problem p = gen_random_instance(n, 40 + trial);
    const SquareMatrix C = cost_matrix(p);
    const Vector x = testing::random_simplex(p.m(), rng);
    double value = testing::plan_cost(C, x), infeas = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += x[i * n + j], col += x[j * n + i];
      infeas += std::abs(row - p.r[i]) + std::abs(col - p.c[i]);
    }
    value += 2.0 * p.d_max * infeas;
    EXPECT_NEAR(primal_value(p, x), value, 1e-12);
  }
}

TEST(DualValue, SingleEdgeCancels) {
  const Problem one = build_problem(SquareMatrix(1, {5.0}), Vector{1}, Vector{1});
  for (double a : {-1.0, -0.3, 0.0, 0.8}) EXPECT_NEAR(dual_value(one, Vector{a, 0.5 - a}), 5.0, 1e-12);
}

TEST(DualValue, ZeroYGivesMinimumCost) {
  const Problem p = gen_random_instance(5, 12);
  EXPECT_EQ(dual_value(p, Vector(10, 0.0)), *std::min_element(p.d.begin(), p.d.end()));
}

TEST(DualValue, MatchesVertexEnumeration) {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Problem p = gen_random_instance(n, 60 + trial);
    const auto A = dense_incidence(n);
    const Vector y = testing::random_box(2 * n, rng);
    const Vector ay_dense = dense_mul_t(A, y);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < p.m(); ++e) {
      // vertex e of the simplex: d_e + 2 d_max (y'A e_e - b'y)
      double by = 0.0;
      for (std::size_t k = 0; k < 2 * n; ++k) by += p.b[k] * y[k];
      best = std::min(best, p.d[e] + 2.0 * p.d_max * (ay_dense[e] - by));
    }
    EXPECT_NEAR(dual_value(p, y), best, 1e-12);
  }
}

TEST(DualityGap, SingleEdgeIsZero) {
  const Problem one = build_problem(SquareMatrix(1, {3.0}), Vector{1}, Vector{1});
  for (double a : {-1.0, 0.0, 0.4}) EXPECT_NEAR(duality_gap(one, {Vector{1.0}, Vector{a, -a}}), 0.0, 1e-12);
}

TEST(DualityGap, HandEvaluation) {
  const Problem p = two_by_two();
  const GapReport g = evaluate_gap(p, uniform_point(p));
  EXPECT_DOUBLE_EQ(g.primal, 0.5);
  EXPECT_DOUBLE_EQ(g.dual, 0.0);
  EXPECT_DOUBLE_EQ(g.gap, 0.5);
}

TEST(DualityGap, OracleOptimalPairIsTight) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Problem p = gen_random_instance(2 + seed % 5, seed);
    const std::size_t n = p.n;
    const OracleResult opt = exact_oracle(p);
    // Potentials on the optimal basis, then two c-transforms to bound their range.
    Vector f(n, NAN), g(n, NAN);
    f[0] = 0.0;
    for (std::size_t sweep = 0; sweep < 2 * n; ++sweep)
      for (const auto& cell : opt.vertex) {
        const double cij = p.d[cell.row * n + cell.col];
        if (!std::isnan(f[cell.row]) && std::isnan(g[cell.col])) g[cell.col] = cij - f[cell.row];
        if (std::isnan(f[cell.row]) && !std::isnan(g[cell.col])) f[cell.row] = cij - g[cell.col];
      }
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = INFINITY;
      for (std::size_t j = 0; j < n; ++j) f[i] = std::min(f[i], p.d[i * n + j] - g[j]);
    }
    const double mid = (*std::max_element(f.begin(), f.end()) + *std::min_element(f.begin(), f.end())) / 2;
    for (double& v : f) v -= mid;
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = INFINITY;
      for (std::size_t i = 0; i < n; ++i) g[j] = std::min(g[j], p.d[i * n + j] - f[i]);
    }
    PrimalDualPoint z{opt.plan.X.data, Vector(2 * n)};
    for (std::size_t i = 0; i < n; ++i) {
      z.y[i] = -f[i] / (2.0 * p.d_max);
      z.y[n + i] = -g[i] / (2.0 * p.d_max);
    }
    ASSERT_TRUE(is_valid_point(p, z, 1e-9));
    EXPECT_LE(duality_gap(p, z), 1e-6) << "seed " << seed;
    EXPECT_TRUE(termination_check(p, z, 1e-6));
  }
}

TEST(DualityGapProperty, WeakDuality) {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const Problem p = gen_random_instance(1 + trial % 8, 200 + trial);
    EXPECT_GE(duality_gap(p, random_point(p, rng)), -1e-9);
  }
}

TEST(TransportObjective, Examples) {
  const Problem zero = build_problem(SquareMatrix(3, 0.0), Vector{1, 2, 3}, Vector{3, 2, 1});
  EXPECT_EQ(transport_objective(zero, independent_coupling(zero)), 0.0);

  SquareMatrix C(3, 0.0);
  C(0, 0) = 1, C(1, 1) = 2, C(2, 2) = 4, C(0, 2) = 9;
  const Problem diag = build_problem(C, Vector{1, 1, 2}, Vector{1, 1, 2});
  TransportPlan plan{SquareMatrix(3)};
  for (std::size_t i = 0; i < 3; ++i) plan.X(i, i) = diag.r[i];
  EXPECT_DOUBLE_EQ(transport_objective(diag, plan), 0.25 + 0.5 + 2.0);

  SplitMix64 rng(4);
  const Problem p = gen_random_instance(6, 4);
  const TransportPlan random{SquareMatrix(6, testing::random_simplex(36, rng))};
  EXPECT_NEAR(transport_objective(p, random), testing::plan_cost(cost_matrix(p), random.X.data), 1e-12);
  EXPECT_THROW(transport_objective(p, plan), std::invalid_argument);
}

TEST(ValidPoint, DetectsViolations) {
  const Problem p = two_by_two();
  PrimalDualPoint z = uniform_point(p);
  EXPECT_TRUE(is_valid_point(p, z));
  z.y[0] = 1.5;
  EXPECT_FALSE(is_valid_point(p, z));
  z = uniform_point(p);
  z.x[0] += 0.1;
  EXPECT_FALSE(is_valid_point(p, z));
}

}  // namespace
}  // namespace areaot
