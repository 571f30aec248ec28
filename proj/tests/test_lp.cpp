// Copyright 2026 The qapcut Authors
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

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"

namespace qapcut {
namespace {

TEST(Simplex, SingleLowerRow) {
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", -kInfinity, kInfinity, false, 1.0);
  lp.add_constraint("c", {{x, 1.0}}, Relation::GreaterEqual, 1.0);
  const LpSolution s = solve(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.primal[0], 1.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
  EXPECT_NEAR(dual_objective(s, lp), 1.0, 1e-12);
}

TEST(Simplex, EmptyPolytopeHasFarkasRay) {
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", -kInfinity, kInfinity, false, 1.0);
  lp.add_constraint("lo", {{x, 1.0}}, Relation::GreaterEqual, 1.0);
  lp.add_constraint("hi", {{x, 1.0}}, Relation::LessEqual, 0.0);
  const LpSolution s = solve(lp);
  EXPECT_EQ(s.status, LpStatus::Infeasible);
  ASSERT_TRUE(s.farkas.has_value());
  const auto gap = farkas_gap(lp, *s.farkas);
  ASSERT_TRUE(gap.has_value());
  EXPECT_GT(*gap, 0.0);
}

TEST(Simplex, InfeasibleWithBoundsCertified) {
  LpModel lp(Sense::Maximize);
  const int x = lp.add_variable("x", 0.0, 1.0);
  const int y = lp.add_variable("y", 0.0, 1.0);
  lp.add_constraint("sum", {{x, 1.0}, {y, 1.0}}, Relation::Equal, 3.0);
  const LpSolution s = solve(lp);
  ASSERT_EQ(s.status, LpStatus::Infeasible);
  EXPECT_TRUE(farkas_gap(lp, *s.farkas).has_value());
}

TEST(Simplex, Unbounded) {
  LpModel lp(Sense::Maximize);
  const int x = lp.add_variable("x", 0.0, kInfinity, false, 1.0);
  const int y = lp.add_variable("y", 0.0, kInfinity, false, 0.0);
  lp.add_constraint("c", {{x, 1.0}, {y, -1.0}}, Relation::LessEqual, 2.0);
  EXPECT_EQ(solve(lp).status, LpStatus::Unbounded);
}

TEST(Simplex, FreeVariablesAndEqualities) {
  // min |x - 3| written with a free x and t >= +-(x - 3).
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", -kInfinity, kInfinity);
  const int t = lp.add_variable("t", -kInfinity, kInfinity, false, 1.0);
  lp.add_constraint("a", {{t, 1.0}, {x, -1.0}}, Relation::GreaterEqual, -3.0);
  lp.add_constraint("b", {{t, 1.0}, {x, 1.0}}, Relation::GreaterEqual, 3.0);
  lp.add_constraint("e", {{x, 2.0}}, Relation::Equal, 5.0);
  const LpSolution s = solve(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.primal[0], 2.5, 1e-12);
  EXPECT_NEAR(s.objective_value, 0.5, 1e-12);
}

TEST(Simplex, IterationLimitIsReported) {
  SimplexOptions opt;
  opt.iteration_limit = 1;
  const QapInstance inst = testing::line3();
  const LinearizationModel m = build_xy(inst, compute_bounds(inst));
  EXPECT_EQ(solve(m.lp, opt).status, LpStatus::IterationLimit);
}

// Random LPs with a known feasible point and boxed variables, so every
// instance has an optimum.
LpModel random_lp(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> rel(0, 2);
  LpModel lp(seed % 2 ? Sense::Maximize : Sense::Minimize);
  std::vector<double> x0(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const double lo = -1.0 - std::abs(u(rng)), hi = 1.0 + std::abs(u(rng));
    lp.add_variable("v" + std::to_string(j), lo, hi, false, u(rng));
    x0[j] = 0.5 * u(rng);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Term> t;
    double act = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
      if (u(rng) > 0.0) {
        const double c = u(rng);
        t.push_back({static_cast<int>(j), c});
        act += c * x0[j];
      }
    switch (rel(rng)) {
      case 0: lp.add_constraint("r", t, Relation::LessEqual, act + std::abs(u(rng))); break;
      case 1: lp.add_constraint("r", t, Relation::GreaterEqual, act - std::abs(u(rng))); break;
      default: lp.add_constraint("r", t, Relation::Equal, act); break;
    }
  }
  return lp;
}

TEST(Simplex, DualityOnRandomFeasibleLps) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const LpModel lp = random_lp(seed, 12, 15);
    const LpSolution s = solve(lp);
    ASSERT_TRUE(s.optimal()) << "seed " << seed << " " << to_string(s.status);
    EXPECT_LE(lp.max_violation(s.primal), 1e-7);
    const double dual = dual_objective(s, lp);
    EXPECT_NEAR(dual, s.objective_value, 1e-6 * (1.0 + std::abs(s.objective_value)));
    const bool min = lp.sense() == Sense::Minimize;
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
      const Constraint& c = lp.constraints()[i];
      const double y = s.duals[i];
      const double slack = lp.row_activity(i, s.primal) - c.rhs;
      // Sign of y: raising the rhs of a >= row can only hurt a minimization.
      if (c.relation == Relation::GreaterEqual) {
        EXPECT_GE(min ? y : -y, -1e-7);
      } else if (c.relation == Relation::LessEqual) {
        EXPECT_LE(min ? y : -y, 1e-7);
      }
      EXPECT_LE(std::abs(y * slack), 1e-6);
    }
  }
}

TEST(Simplex, DegenerateTransportationTerminates) {
  // Highly degenerate: every supply and demand is 1 and all costs tie.
  for (std::size_t m : {4, 6, 8}) {
    LpModel lp(Sense::Minimize);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) lp.add_variable("x", 0.0, kInfinity, false, (k + l) % 2);
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Term> row, col;
      for (std::size_t l = 0; l < m; ++l) {
        row.push_back({static_cast<int>(k * m + l), 1.0});
        col.push_back({static_cast<int>(l * m + k), 1.0});
      }
      lp.add_constraint("s", row, Relation::Equal, 1.0);
      lp.add_constraint("d", col, Relation::Equal, 1.0);
    }
    const LpSolution s = solve(lp);
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(s.objective_value, 0.0, 1e-9);
  }
}

TEST(Simplex, RowPermutationInvariance) {
  const QapInstance inst = testing::line3();
  const LinearizationModel m = build_xy(inst, compute_bounds(inst));
  const double base = solve(m.lp).objective_value;
  EXPECT_NEAR(base, 22.0 / 18, 1e-9);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::size_t> order(m.lp.num_constraints());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    LpModel shuffled(m.lp.sense());
    for (const Variable& v : m.lp.variables()) shuffled.add_variable(v.name, v.lower, v.upper, v.integer);
    for (std::size_t j = 0; j < m.lp.num_variables(); ++j)
      shuffled.set_objective_coefficient(static_cast<int>(j), m.lp.objective()[j]);
    for (std::size_t i : order) {
      const Constraint& c = m.lp.constraints()[i];
      shuffled.add_constraint(c.name, c.terms, c.relation, c.rhs);
    }
    EXPECT_NEAR(solve(shuffled).objective_value, base, 1e-9);
  }
}

TEST(FixVariables, SetsBothBounds) {
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", 0.0, 1.0);
  const LpModel f = fix_variables(lp, {{x, 0.5}});
  EXPECT_EQ(f.variable(x).lower, 0.5);
  EXPECT_EQ(f.variable(x).upper, 0.5);
  EXPECT_EQ(lp.variable(x).upper, 1.0);
}

TEST(FixVariables, OutsideBoundsThrows) {
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", 0.0, 1.0);
  EXPECT_THROW(fix_variables(lp, {{x, 1.5}}), ArgumentError);
  EXPECT_THROW(fix_variables(lp, {{7, 0.0}}), ArgumentError);
}

TEST(DualObjective, RequiresOptimal) {
  LpModel lp(Sense::Minimize);
  const int x = lp.add_variable("x", 0.0, 1.0);
  lp.add_constraint("c", {{x, 1.0}}, Relation::GreaterEqual, 2.0);
  const LpSolution s = solve(lp);
  EXPECT_THROW(dual_objective(s, lp), StateError);
}

TEST(LpFormat, RoundTripPreservesOptimum) {
  const QapInstance inst = random_instance(4, 3);
  const BoundTables bounds = compute_bounds(inst);
  for (LinearizationKind kind : kAllLinearizations) {
    const LinearizationModel m = build_linearization(kind, inst, &bounds);
    const LpModel back = read_lp(write_lp(m.lp));
    ASSERT_EQ(back.num_variables(), m.lp.num_variables());
    ASSERT_EQ(back.num_constraints(), m.lp.num_constraints());
    const double a = solve(m.lp).objective_value;
    const double b = solve(back).objective_value;
    EXPECT_NEAR(a, b, 1e-11 * (1.0 + std::abs(a))) << short_name(kind);
  }
}

TEST(LpFormat, KeepsNamesBoundsAndIntegrality) {
  LpModel lp(Sense::Maximize);
  lp.add_variable("x[1,1]", 0.0, 1.0, true, 2.0);
  lp.add_variable("z", -0.125, kInfinity, false, -1.0);
  lp.add_variable("f", -kInfinity, kInfinity, false, 0.0);
  lp.add_constraint("xy15[1,1]", {{1, 1.0}, {0, -0.333333333333}}, Relation::GreaterEqual, 0.0);
  lp.add_constraint("e", {{0, 1.0}, {2, 1.0}}, Relation::Equal, 1.0);
  const LpModel back = read_lp(write_lp(lp));
  EXPECT_EQ(back.sense(), Sense::Maximize);
  EXPECT_EQ(back.variable(0).name, "x[1,1]");
  EXPECT_TRUE(back.variable(0).integer);
  EXPECT_EQ(back.variable(1).lower, -0.125);
  EXPECT_EQ(back.variable(2).lower, -kInfinity);
  EXPECT_EQ(back.constraint(0).name, "xy15[1,1]");
  EXPECT_NEAR(back.constraint(0).terms[0].coef, -0.333333333333, 1e-15);
}

TEST(LpFormat, MalformedInputThrows) {
  EXPECT_THROW(read_lp("Minimize\n obj: x +\nSubject To\n c: x >= \nEnd\n"), InputError);
}

}  // namespace
}  // namespace qapcut
