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

SeparationOptions quiet() {
  SeparationOptions o;
  o.log = [](const std::string&) {};
  return o;
}

TEST(AbCut, IndexMappingAndRhs) {
  const auto rc = testing::line3_reference_cuts()[3];
  const AbCut c = testing::to_ab_cut(rc, 3);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c.delta_at(1, 0), 2.0 / 9);
  EXPECT_DOUBLE_EQ(c.delta_at(1, 1), 1.0 / 9);
  EXPECT_EQ(c.delta_at(2, 0), 0.0);
  EXPECT_EQ(c.delta_at(0, 1), 0.0);
  const RealMatrix x(3, 3, 1.0 / 3);
  EXPECT_NEAR(c.rhs(x), (6.0 - 3.0) / 27, 1e-15);
}

TEST(ReferenceCuts, AllValid) {
  const QapInstance inst = testing::line3();
  for (const auto& rc : testing::line3_reference_cuts())
    EXPECT_TRUE(cut_is_valid(inst, testing::to_ab_cut(rc, 3)))
        << "cut at (" << rc.a << "," << rc.b << ")";
}

TEST(ReferenceCuts, FirstFourViolatedAtTheirPoints) {
  const auto points = testing::line3_trajectory();
  const auto cuts = testing::line3_reference_cuts();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = points[cuts[i].point];
    EXPECT_GT(testing::to_ab_cut(cuts[i], 3).violation(p.x, p.z), 1e-7) << "cut " << i;
  }
}

TEST(ReferenceCuts, FifthIsSatisfiedAtItsPoint) {
  // rhs = 4/9 * 3/4 - 2/9 * 1/4 - 1/9 * 2/4 = 8/36 but z*_33 = 12/36.
  const auto cut = testing::line3_reference_cuts()[4];
  const auto& p = testing::line3_trajectory()[cut.point];
  const AbCut c = testing::to_ab_cut(cut, 3);
  EXPECT_NEAR(c.rhs(p.x), 8.0 / 36, 1e-12);
  EXPECT_NEAR(p.z(2, 2), 12.0 / 36, 1e-12);
  EXPECT_LT(c.violation(p.x, p.z), 0.0);
}

TEST(ReferenceCuts, TrajectoryPointsAreDoublyStochastic) {
  for (const auto& p : testing::line3_trajectory()) EXPECT_NO_THROW(DoublyStochasticPoint{p.x});
}

TEST(LCut, ValidForEveryPair) {
  const QapInstance inst = random_instance(4, 17);
  const BoundTables bounds = compute_bounds(inst);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      EXPECT_TRUE(cut_is_valid(inst, l_cut(bounds, a, b)));
      AbCut inflated = l_cut(bounds, a, b);
      inflated.coef_ab += 0.01;
      EXPECT_FALSE(cut_is_valid(inst, inflated));
    }
}

TEST(CutIsValid, GuardsAndShapeChecks) {
  const QapInstance big = random_instance(7, 1);
  AbCut c;
  c.delta = RealMatrix(6, 6, 0.0);
  EXPECT_THROW(cut_is_valid(big, c), CapacityError);
  EXPECT_THROW(cut_is_valid(testing::line3(), c), ArgumentError);
}

TEST(Prefilter, ZeroEntryAndFittingMinimizer) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const DoublyStochasticPoint id = to_x_matrix(Permutation::identity(3));
  // argmin(l_11) is the identity on {2,3}, which fits under the identity.
  EXPECT_FALSE(prefilter(0, 0, id, bounds));
  EXPECT_FALSE(prefilter(0, 1, id, bounds));
  const DoublyStochasticPoint uniform(RealMatrix(3, 3, 1.0 / 3));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_FALSE(prefilter(a, b, uniform, bounds));
}

TEST(Prefilter, PassesWhenNoMinimizerFits) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_trajectory()[0];
  EXPECT_TRUE(prefilter(0, 2, DoublyStochasticPoint(p.x), bounds));
}

TEST(SeparateAb, RecoversFirstReferenceCut) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_trajectory()[0];
  const SeparationOutcome out =
      separate_ab(inst, bounds, 0, 2, DoublyStochasticPoint(p.x), p.z, quiet());
  ASSERT_EQ(out.status, SeparationStatus::CutFound);
  EXPECT_FALSE(out.from_farkas);
  EXPECT_NEAR(out.cut->coef_ab, 5.0 / 9, 1e-9);
  EXPECT_NEAR(out.violation, 1.0 / 36, 1e-9);
  EXPECT_NEAR(out.cut->violation(p.x, p.z), out.violation, 1e-9);
  EXPECT_TRUE(cut_is_valid(inst, *out.cut));
}

TEST(SeparateAb, SecondReferencePair) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_trajectory()[0];
  const SeparationOutcome out =
      separate_ab(inst, bounds, 2, 2, DoublyStochasticPoint(p.x), p.z, quiet());
  ASSERT_EQ(out.status, SeparationStatus::CutFound);
  EXPECT_NEAR(out.cut->coef_ab, 5.0 / 9, 1e-9);
  EXPECT_TRUE(cut_is_valid(inst, *out.cut));
}

TEST(SeparateAb, PrefilteredPairIsSkipped) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_uniform_point();
  const auto out = separate_ab(inst, bounds, 0, 0, DoublyStochasticPoint(p.x), p.z, quiet());
  EXPECT_EQ(out.status, SeparationStatus::Skipped);
}

TEST(SeparateAb, ArgumentChecks) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_uniform_point();
  const DoublyStochasticPoint x(p.x);
  EXPECT_THROW(separate_ab(inst, bounds, 3, 0, x, p.z), ArgumentError);
  EXPECT_THROW(separate_ab(inst, bounds, 0, 0, x, RealMatrix(2, 2, 0.0)), ArgumentError);
}

TEST(SeparateAb, LineFourStallPoint) {
  const QapInstance inst = testing::line4();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line4_stall_point();
  const DoublyStochasticPoint x(p.x);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      EXPECT_EQ(prefilter(a, b, x, bounds), a == 3 && b == 3) << a << "," << b;
      SeparationOptions opt = quiet();
      opt.use_prefilter = false;
      const auto out = separate_ab(inst, bounds, a, b, x, p.z, opt);
      EXPECT_NE(out.status, SeparationStatus::CutFound) << a << "," << b;
      EXPECT_LE(out.violation, 1e-7);
    }
}

TEST(SeparateAb, EmittedCutsAreValidOnRandomPoints) {
  for (const auto& [n, seed] : testing::battery({3, 4}, 10, 500)) {
    const QapInstance inst = random_instance(n, seed);
    const BoundTables bounds = compute_bounds(inst);
    const LinearizationModel m = build_xy(inst, bounds);
    const LpSolution s = solve(m.lp);
    ASSERT_TRUE(s.optimal());
    const auto pt = detail::read_point(m, s.primal);
    const DoublyStochasticPoint x(pt.x, 1e-6);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto out = separate_ab(inst, bounds, a, b, x, pt.z, quiet());
        if (out.status != SeparationStatus::CutFound) continue;
        EXPECT_TRUE(cut_is_valid(inst, *out.cut)) << "seed " << seed;
        EXPECT_GT(out.cut->violation(pt.x, pt.z), kViolationThreshold);
      }
  }
}

TEST(ConeMembership, AssembliesOnLineThree) {
  const QapInstance inst = testing::line3();
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      EXPECT_TRUE(verify_cone_membership(inst, assemble_l_multipliers(inst, a, b)));
      EXPECT_TRUE(verify_cone_membership(inst, assemble_u_multipliers(inst, a, b)));
    }
}

TEST(ConeMembership, AssembliesOnRandomInstances) {
  for (const auto& [n, seed] : testing::battery({2, 3, 4, 5}, 8, 900)) {
    const QapInstance inst = random_instance(n, seed);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        EXPECT_TRUE(verify_cone_membership(inst, assemble_l_multipliers(inst, a, b)));
        EXPECT_TRUE(verify_cone_membership(inst, assemble_u_multipliers(inst, a, b)));
      }
  }
}

TEST(ConeMembership, AssembledXCoefficientsReproduceBounds) {
  // The implied inequality is -z_ab <= sum x_coef x, i.e. z_ab >= -sum x_coef x.
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const RealMatrix c = assemble_l_multipliers(inst, a, b).x_coefficients();
      EXPECT_NEAR(-c(a, b), bounds.l(a, b), 1e-9);
    }
}

TEST(ConeMembership, RejectsBrokenElements) {
  const QapInstance inst = testing::line3();
  ConeElement e = assemble_l_multipliers(inst, 0, 0);
  e.gamma(0, 0, 1, 1) += 1.0;
  EXPECT_FALSE(verify_cone_membership(inst, e));
  ConeElement f = assemble_l_multipliers(inst, 0, 0);
  f.alpha(1, 1) = 1.0;
  EXPECT_FALSE(verify_cone_membership(inst, f));
  EXPECT_THROW(verify_cone_membership(testing::line4(), f), ArgumentError);
}

TEST(FullProjection, UniformPointIsInXyButNotLiftable) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  const auto p = testing::line3_uniform_point();
  const LinearizationModel xy = build_xy(inst, bounds);
  std::vector<double> v(xy.lp.num_variables());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      v[static_cast<std::size_t>(xy.layout.x(i, j))] = p.x(i, j);
      v[static_cast<std::size_t>(xy.layout.z(i, j))] = p.z(i, j);
    }
  EXPECT_LE(xy.lp.max_violation(v), 1e-9);

  const auto cut = separate_full_projection(inst, DoublyStochasticPoint(p.x), p.z);
  ASSERT_TRUE(cut.has_value());
  EXPECT_GT(cut->violation, 1e-9);
  EXPECT_TRUE(verify_cone_membership(inst, cut->element, 1e-7));
}

TEST(FullProjection, PermutationPointsLift) {
  const QapInstance inst = random_instance(4, 23);
  for_each_permutation(4, [&](const std::vector<int>& images) {
    const Permutation perm(images);
    EXPECT_FALSE(separate_full_projection(inst, to_x_matrix(perm), induced_z(inst, perm)));
  });
}

TEST(FullProjection, CapacityGuard) {
  const QapInstance inst = random_instance(6, 2);
  const RealMatrix x(6, 6, 1.0 / 6);
  EXPECT_THROW(separate_full_projection(inst, DoublyStochasticPoint(x), x), CapacityError);
}

TEST(FullProjection, WitnessImpliesStrictContainment) {
  std::size_t witnesses = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const QapInstance inst = random_instance(4, 1200 + seed);
    if (!find_containment_witness(inst)) continue;
    ++witnesses;
    const RealMatrix l = compute_bounds(inst).l;
    const RealMatrix x(4, 4, 0.25);
    RealMatrix z(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) z(i, j) = l(i, j) / 4;
    EXPECT_TRUE(separate_full_projection(inst, DoublyStochasticPoint(x), z).has_value())
        << "seed " << 1200 + seed;
  }
  EXPECT_GT(witnesses, 0u);
}

TEST(CutPool, RejectsNearDuplicates) {
  CutPool pool;
  AbCut c = testing::to_ab_cut(testing::line3_reference_cuts()[0], 3);
  EXPECT_TRUE(pool.add(c));
  c.coef_ab += 1e-9;
  EXPECT_FALSE(pool.add(c));
  c.coef_ab += 1e-3;
  EXPECT_TRUE(pool.add(c));
  c.a = 1;
  EXPECT_TRUE(pool.add(c));
  EXPECT_EQ(pool.size(), 3u);
}

TEST(AddCutRow, CutsOffTheSeparatedPoint) {
  const QapInstance inst = testing::line3();
  const BoundTables bounds = compute_bounds(inst);
  LinearizationModel m = build_xy(inst, bounds);
  const double before = solve(m.lp).objective_value;
  for (const auto& rc : testing::line3_reference_cuts()) add_cut_row(m, testing::to_ab_cut(rc, 3), "c");
  const double after = solve(m.lp).objective_value;
  EXPECT_GE(after, before - 1e-9);
  EXPECT_LE(after, testing::kLine3Optimum + 1e-9);
  LinearizationModel aj = build_aj(inst);
  EXPECT_THROW(add_cut_row(aj, l_cut(bounds, 0, 0), "c"), ArgumentError);
}

}  // namespace
}  // namespace qapcut
