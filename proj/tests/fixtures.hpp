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

// Shared instances and reference points for the tests.
//
// line3: n = 3, D the path metric on three locations, P = A / 18.
// line4: n = 4, D the path metric on four locations, P = B / 16.
//
// The line3 trajectory is a known run of the root cut loop: three
// fractional points, the ab-cuts recorded as violated at each, and the final
// integral point. The line4 point is where a known run of the loop stalls.

#ifndef QAPCUT_TESTS_FIXTURES_HPP_
#define QAPCUT_TESTS_FIXTURES_HPP_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "qapcut.hpp"

namespace qapcut::testing {

inline RealMatrix scaled(RealMatrix m, double s) {
  m *= s;
  return m;
}

inline QapInstance line3() {
  return QapInstance(scaled({{0, 4, 2}, {3, 0, 3}, {4, 2, 0}}, 1.0 / 18),
                     RealMatrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

inline QapInstance line4() {
  return QapInstance(scaled({{0, 2, 1, 1}, {2, 0, 2, 0}, {1, 1, 0, 2}, {2, 1, 1, 0}}, 1.0 / 16),
                     RealMatrix{{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
}

/// Optimum of line3: 23/18 at (2,1,3).
inline constexpr double kLine3Optimum = 23.0 / 18.0;

/// A circulated l table for line3, scaled by 18, with rows 1 and 2
/// interchanged: recomputation gives row 1 = (8,6,8), row 2 = (9,6,9).
inline RealMatrix line3_listed_l() { return scaled({{9, 6, 9}, {8, 6, 8}, {8, 6, 8}}, 1.0 / 18); }

/// l recomputed by enumeration of both reduced assignments, scaled by 18.
inline RealMatrix line3_l() { return scaled({{8, 6, 8}, {9, 6, 9}, {8, 6, 8}}, 1.0 / 18); }

struct ReferencePoint {
  RealMatrix x;
  RealMatrix z;
};

/// z_ab >= coef x_ab - sum delta_kl x_kl, indices 1-based.
struct ReferenceCut {
  std::size_t a, b;
  double coef;
  std::vector<std::tuple<std::size_t, std::size_t, double>> delta;
  std::size_t point;  // index into line3_trajectory()
};

inline std::vector<ReferencePoint> line3_trajectory() {
  return {
      {scaled({{3, 0, 1}, {1, 3, 0}, {0, 1, 3}}, 1.0 / 4),
       scaled({{24, 0, 8}, {9, 18, 0}, {0, 6, 24}}, 1.0 / 72)},
      {scaled({{4, 1, 0}, {1, 2, 2}, {0, 2, 3}}, 1.0 / 5),
       scaled({{32, 6, 0}, {9, 12, 18}, {0, 12, 24}}, 1.0 / 90)},
      {scaled({{2, 1, 1}, {2, 2, 0}, {0, 1, 3}}, 1.0 / 4),
       scaled({{8, 3, 5}, {9, 6, 0}, {0, 3, 12}}, 1.0 / 36)},
      {RealMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
       scaled({{0, 6, 0}, {9, 0, 0}, {0, 0, 8}}, 1.0 / 18)},
  };
}

inline std::vector<ReferenceCut> line3_reference_cuts() {
  return {
      {1, 3, 5.0 / 9, {{3, 1, 3.0 / 9}}, 0},
      {3, 3, 5.0 / 9, {{1, 2, 3.0 / 9}}, 0},
      {1, 1, 5.0 / 9, {{2, 2, 1.0 / 9}}, 1},
      {3, 3, 6.0 / 9, {{2, 1, 2.0 / 9}, {2, 2, 1.0 / 9}}, 1},
      {3, 3, 4.0 / 9, {{1, 2, 2.0 / 9}, {2, 2, 1.0 / 9}}, 2},
  };
}

inline AbCut to_ab_cut(const ReferenceCut& rc, std::size_t n) {
  AbCut c;
  c.a = rc.a - 1;
  c.b = rc.b - 1;
  c.coef_ab = rc.coef;
  c.delta = RealMatrix(n - 1, n - 1, 0.0);
  for (const auto& [k1, l1, v] : rc.delta) {
    const std::size_t k = k1 - 1, l = l1 - 1;
    c.delta(k < c.a ? k : k - 1, l < c.b ? l : l - 1) = v;
  }
  return c;
}

inline ReferencePoint line4_stall_point() {
  return {scaled({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}, 0.5),
          scaled({{7, 5, 0, 0}, {6, 4, 0, 0}, {0, 0, 5, 7}, {0, 0, 5, 8}}, 1.0 / 32)};
}

/// x = J/3, z = l o x.
inline ReferencePoint line3_uniform_point() {
  const RealMatrix l = compute_bounds(line3()).l;
  RealMatrix x(3, 3, 1.0 / 3), z(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) z(i, j) = l(i, j) / 3.0;
  return {x, z};
}

/// Independent objective: sum over all i,j,k,l of p_ik d_jl x_ij x_kl on the
/// 0/1 matrix, skipping i == k and j == l, plus sum c_ij x_ij.
inline double naive_objective(const QapInstance& inst, const Permutation& perm) {
  const std::size_t n = inst.size();
  RealMatrix x(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x(i, static_cast<std::size_t>(perm[i])) = 1.0;
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      v += inst.c(i, j) * x(i, j);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (i != k && j != l) v += inst.p(i, k) * inst.d(j, l) * x(i, j) * x(k, l);
    }
  return v;
}

/// Seeds for the random batteries; n cycles through the listed sizes.
inline std::vector<std::pair<std::size_t, std::uint64_t>> battery(
    std::initializer_list<std::size_t> sizes, std::size_t count, std::uint64_t base = 1000) {
  std::vector<std::pair<std::size_t, std::uint64_t>> out;
  const std::vector<std::size_t> s(sizes);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(s[i % s.size()], base + i);
  return out;
}

}  // namespace qapcut::testing

#endif  // QAPCUT_TESTS_FIXTURES_HPP_
