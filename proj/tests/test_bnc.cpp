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

#include "fixtures.hpp"

namespace qapcut {
namespace {

SolveConfig quiet_config() {
  SolveConfig c;
  c.log = [](const std::string&) {};
  return c;
}

TEST(RoundToPermutation, IntegralPointIsReturned) {
  const Permutation p({2, 0, 3, 1});
  EXPECT_EQ(round_to_permutation(to_x_matrix(p)), p);
}

TEST(RoundToPermutation, TiesBreakLexicographically) {
  EXPECT_EQ(round_to_permutation(DoublyStochasticPoint(RealMatrix(3, 3, 1.0 / 3))),
            Permutation::identity(3));
  const auto p = testing::line4_stall_point();
  EXPECT_EQ(round_to_permutation(DoublyStochasticPoint(p.x)), Permutation::identity(4));
}

TEST(RoundToPermutation, PicksTheHeavyAssignment) {
  const RealMatrix x{{0.1, 0.6, 0.3}, {0.6, 0.3, 0.1}, {0.3, 0.1, 0.6}};
  EXPECT_EQ(round_to_permutation(DoublyStochasticPoint(x)), Permutation({1, 0, 2}));
}

TEST(RootCutLoop, LineThree) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const RootCutResult r = root_cut_loop(inst, bounds, 50, quiet_config());
  ASSERT_TRUE(r.solution.optimal());
  EXPECT_NEAR(r.bounds.front(), 22.0 / 18, 1e-9);
  EXPECT_GT(r.bounds.back(), r.bounds.front() + 1e-6);
  EXPECT_LE(r.bounds.back(), testing::kLine3Optimum + 1e-9);
  EXPECT_EQ(r.bounds.size(), r.rounds + 1);
  for (std::size_t i = 1; i < r.bounds.size(); ++i) EXPECT_GE(r.bounds[i], r.bounds[i - 1] - 1e-9);
  for (const AbCut& c : r.cuts) EXPECT_TRUE(cut_is_valid(inst, c));
}

TEST(RootCutLoop, RoundLimitAndArgumentCheck) {
  const QapInstance inst = testing::line4();
  const BoundTables bounds = compute_bounds(inst);
  EXPECT_LE(root_cut_loop(inst, bounds, 1, quiet_config()).rounds, 1u);
  EXPECT_THROW(root_cut_loop(inst, bounds, 0), ArgumentError);
}

TEST(RootCutLoop, ThreadsDoNotChangeTheResult) {
  const QapInstance inst = random_instance(5, 77);
  const BoundTables bounds = compute_bounds(inst);
  SolveConfig one = quiet_config(), four = quiet_config();
  four.threads = 4;
  const RootCutResult a = root_cut_loop(inst, bounds, 5, one);
  const RootCutResult b = root_cut_loop(inst, bounds, 5, four);
  ASSERT_EQ(a.cuts.size(), b.cuts.size());
  EXPECT_EQ(a.bounds, b.bounds);
  for (std::size_t i = 0; i < a.cuts.size(); ++i) {
    EXPECT_EQ(a.cuts[i].a, b.cuts[i].a);
    EXPECT_EQ(a.cuts[i].b, b.cuts[i].b);
    EXPECT_EQ(a.cuts[i].coef_ab, b.cuts[i].coef_ab);
    EXPECT_EQ(a.cuts[i].delta, b.cuts[i].delta);
  }
}

TEST(SolveBnc, LineThree) {
  const SolveReport r = solve_bnc(testing::line3(), quiet_config());
  ASSERT_TRUE(r.optimal);
  EXPECT_NEAR(*r.incumbent_value, testing::kLine3Optimum, 1e-9);
  EXPECT_EQ(r.incumbent->one_based(), (std::vector<int>{2, 1, 3}));
  EXPECT_NEAR(*r.global_bound, *r.incumbent_value, 1e-9);
}

TEST(SolveBnc, LineFour) {
  const SolveReport r = solve_bnc(testing::line4(), quiet_config());
  const BruteForceResult bf = brute_force_optimum(testing::line4());
  ASSERT_TRUE(r.optimal);
  EXPECT_NEAR(*r.incumbent_value, bf.value, 1e-9);
  EXPECT_NEAR(evaluate(testing::line4(), *r.incumbent), bf.value, 1e-9);
}

TEST(SolveBnc, MatchesBruteForce) {
  for (const auto& [n, seed] : testing::battery({3, 4}, 16, 2000)) {
    const QapInstance inst = random_instance(n, seed);
    const SolveReport r = solve_bnc(inst, quiet_config());
    const double opt = brute_force_optimum(inst).value;
    ASSERT_TRUE(r.optimal) << "seed " << seed;
    EXPECT_NEAR(*r.incumbent_value, opt, 1e-6) << "seed " << seed;
    EXPECT_NEAR(evaluate(inst, *r.incumbent), *r.incumbent_value, 1e-9);
    EXPECT_LE(*r.root_bound_before, opt + 1e-6);
    EXPECT_LE(*r.root_bound_after, opt + 1e-6);
  }
}

TEST(SolveBnc, WithoutCutsStillOptimal) {
  SolveConfig c = quiet_config();
  c.cuts = false;
  const QapInstance inst = random_instance(4, 5);
  const SolveReport r = solve_bnc(inst, c);
  EXPECT_TRUE(r.cuts.empty());
  EXPECT_NEAR(*r.incumbent_value, brute_force_optimum(inst).value, 1e-6);
}

TEST(SolveBnc, NodeLimitIsReported) {
  SolveConfig c = quiet_config();
  c.node_limit = 1;
  c.cuts = false;
  const SolveReport r = solve_bnc(random_instance(5, 9), c);
  EXPECT_TRUE(r.node_limit_reached);
  EXPECT_FALSE(r.optimal);
  EXPECT_LE(r.nodes, 1u);
  ASSERT_TRUE(r.incumbent_value.has_value());
  EXPECT_LE(*r.global_bound, *r.incumbent_value + 1e-9);
}

TEST(SolveBnc, NegativeDataRejected) {
  const QapInstance inst(RealMatrix{{0, -1}, {1, 0}}, RealMatrix{{0, 1}, {1, 0}});
  EXPECT_THROW(solve_bnc(inst), ArgumentError);
}

TEST(CompareRelaxations, LineThree) {
  const SolveReport r = compare_relaxations(testing::line3(), quiet_config());
  const std::vector<std::string> keys{"xy", "aj", "lawler", "fy-aggregate", "fy", "kb", "xy+cuts"};
  ASSERT_EQ(r.bounds.size(), keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) EXPECT_EQ(r.bounds[i].first, keys[i]);
  EXPECT_NEAR(*r.bound("xy"), 22.0 / 18, 1e-9);
  EXPECT_NEAR(*r.bound("aj"), 23.0 / 18, 1e-9);
  EXPECT_GE(*r.bound("xy+cuts"), *r.bound("xy") - 1e-6);
  ASSERT_TRUE(r.gap_closed.has_value());
  EXPECT_GT(*r.gap_closed, 0.0);
  EXPECT_LE(*r.gap_closed, 1.0 + 1e-9);
  EXPECT_NEAR(*r.optimum, testing::kLine3Optimum, 1e-9);
}

TEST(CompareRelaxations, ZeroGapGivesNoGapClosed) {
  const QapInstance zero(RealMatrix(3, 3, 0.0), RealMatrix(3, 3, 0.0));
  const SolveReport r = compare_relaxations(zero, quiet_config());
  EXPECT_FALSE(r.gap_closed.has_value());
  EXPECT_NEAR(*r.optimum, 0.0, 1e-12);
}

TEST(CompareRelaxations, CapacityGuard) {
  EXPECT_THROW(compare_relaxations(random_instance(7, 1)), CapacityError);
  SolveConfig c = quiet_config();
  c.lifted_relaxations = false;
  c.root_cut_rounds = 1;
  const SolveReport r = compare_relaxations(random_instance(7, 1), c);
  EXPECT_FALSE(r.bound("aj").has_value());
  EXPECT_TRUE(r.bound("xy").has_value());
  EXPECT_TRUE(r.optimum.has_value());
}

TEST(GapClosed, Formula) {
  EXPECT_DOUBLE_EQ(*gap_closed(1.0, 1.5, 2.0), 0.5);
  EXPECT_FALSE(gap_closed(2.0, 2.0, 2.0).has_value());
}

}  // namespace
}  // namespace qapcut
