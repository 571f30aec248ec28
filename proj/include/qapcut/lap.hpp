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

// Linear assignment with dual potentials, and the Xia-Yuan bound tables
// l_ij / u_ij built from it.

#ifndef QAPCUT_LAP_HPP_
#define QAPCUT_LAP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/matrix.hpp"
#include "qapcut/sense.hpp"

namespace qapcut {

/// Optimal assignment with a dual certificate. For minimization
///   row_duals[k] + col_duals[l] <= cost(k, l)   for all k, l,
/// with equality on assigned pairs, so the duals sum to `value`. For
/// maximization the inequality is reversed.
struct LapResult {
  std::vector<int> assignment;  // assignment[k] = column of row k
  double value = 0.0;
  std::vector<double> row_duals;
  std::vector<double> col_duals;
};

namespace detail {

// Shortest augmenting path with potentials (Kuhn-Munkres in its O(m^3)
// row-by-row form). Arrays are 1-based internally; index 0 is the virtual
// root column.
inline LapResult solve_lap_min(const RealMatrix& cost) {
  const std::size_t m = cost.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  LapResult r;
  r.assignment.assign(m, -1);
  for (std::size_t j = 1; j <= m; ++j)
    r.assignment[match[j] - 1] = static_cast<int>(j - 1);
  r.row_duals.assign(u.begin() + 1, u.end());
  r.col_duals.assign(v.begin() + 1, v.end());
  for (std::size_t k = 0; k < m; ++k)
    r.value += cost(k, static_cast<std::size_t>(r.assignment[k]));
  return r;
}

inline void check_square(const RealMatrix& cost) {
  if (!cost.square())
    throw ArgumentError("assignment cost matrix must be square, got " +
                        std::to_string(cost.rows()) + "x" +
                        std::to_string(cost.cols()));
  for (double c : cost.values())
    if (!std::isfinite(c)) throw ArgumentError("assignment cost must be finite");
}

}  // namespace detail

/// Solves the m x m assignment problem. Maximization negates the costs and
/// the returned duals, so both senses share one code path.
inline LapResult solve_lap(const RealMatrix& cost, Sense sense = Sense::Minimize) {
  detail::check_square(cost);
  if (cost.rows() == 0) throw ArgumentError("assignment problem must have m >= 1");
  if (sense == Sense::Minimize) return detail::solve_lap_min(cost);
  RealMatrix neg = cost;
  neg *= -1.0;
  LapResult r = detail::solve_lap_min(neg);
  r.value = -r.value;
  for (double& x : r.row_duals) x = -x;
  for (double& x : r.col_duals) x = -x;
  return r;
}

inline constexpr std::size_t kArgminMaxSize = 8;

/// Every assignment attaining the optimum within 1e-9, in lexicographic
/// order of the assignment array.
inline std::vector<std::vector<int>> enumerate_argmin(const RealMatrix& cost,
                                                      Sense sense = Sense::Minimize) {
  detail::check_square(cost);
  const std::size_t m = cost.rows();
  if (m == 0) throw ArgumentError("assignment problem must have m >= 1");
  if (m > kArgminMaxSize)
    throw CapacityError("argmin enumeration limited to m <= " +
                        std::to_string(kArgminMaxSize) + ", got m = " +
                        std::to_string(m));
  const double sign = sense == Sense::Minimize ? 1.0 : -1.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> out;
  for_each_permutation(m, [&](const std::vector<int>& p) {
    double v = 0.0;
    for (std::size_t k = 0; k < m; ++k) v += cost(k, static_cast<std::size_t>(p[k]));
    v *= sign;
    if (v < best - kValueTolerance) {
      best = v;
      out.clear();
      out.push_back(p);
    } else if (v <= best + kValueTolerance) {
      out.push_back(p);
    }
  });
  // The running optimum may have tightened after early ties were kept.
  std::erase_if(out, [&](const std::vector<int>& p) {
    double v = 0.0;
    for (std::size_t k = 0; k < m; ++k) v += cost(k, static_cast<std::size_t>(p[k]));
    return sign * v > best + kValueTolerance;
  });
  return out;
}

/// The (n-1) x (n-1) subproblem obtained by fixing facility a to location b.
/// `rows` and `cols` map local indices back to instance indices k != a and
/// l != b, both ascending.
struct ReducedProblem {
  RealMatrix cost;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Cost c_kl = scale * p_ak * d_bl over k != a, l != b.
inline ReducedProblem reduced_problem(const QapInstance& instance, std::size_t a,
                                      std::size_t b, double scale = 1.0) {
  const std::size_t n = instance.size();
  ReducedProblem r;
  for (std::size_t k = 0; k < n; ++k)
    if (k != a) r.rows.push_back(k);
  for (std::size_t l = 0; l < n; ++l)
    if (l != b) r.cols.push_back(l);
  r.cost = RealMatrix(n - 1, n - 1);
  for (std::size_t s = 0; s < n - 1; ++s)
    for (std::size_t t = 0; t < n - 1; ++t)
      r.cost(s, t) = scale * instance.p(a, r.rows[s]) * instance.d(b, r.cols[t]);
  return r;
}

/// Constants of the Xia-Yuan linearization. For every (i, j):
///   l(i, j) = min over reduced assignments of sum p_ik d_jl x_kl,
///   u(i, j) = the corresponding maximum,
/// together with the optimal LAP solutions (duals included) and the set of
/// minimizing reduced assignments used by the a-priori cut filter.
struct BoundTables {
  RealMatrix l;
  RealMatrix u;
  Matrix<LapResult> l_solution;
  Matrix<LapResult> u_solution;
  /// Minimizers of each l-subproblem in local (reduced) indices. Complete
  /// when `argmin_complete`; otherwise holds only the LAP optimum.
  Matrix<std::vector<std::vector<int>>> l_argmin;
  bool argmin_complete = false;

  std::size_t size() const noexcept { return l.rows(); }
};

inline BoundTables compute_bounds(const QapInstance& instance) {
  const std::size_t n = instance.size();
  BoundTables t;
  t.l = RealMatrix(n, n, 0.0);
  t.u = RealMatrix(n, n, 0.0);
  t.l_solution = Matrix<LapResult>(n, n);
  t.u_solution = Matrix<LapResult>(n, n);
  t.l_argmin = Matrix<std::vector<std::vector<int>>>(n, n);
  t.argmin_complete = n - 1 <= kArgminMaxSize;
  if (n == 1) {
    // The reduced problem is empty: both bounds are the empty sum.
    t.l_argmin(0, 0) = {std::vector<int>{}};
    return t;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ReducedProblem rp = reduced_problem(instance, i, j);
      t.l_solution(i, j) = solve_lap(rp.cost, Sense::Minimize);
      t.u_solution(i, j) = solve_lap(rp.cost, Sense::Maximize);
      t.l(i, j) = t.l_solution(i, j).value;
      t.u(i, j) = t.u_solution(i, j).value;
      t.l_argmin(i, j) = t.argmin_complete
                             ? enumerate_argmin(rp.cost, Sense::Minimize)
                             : std::vector<std::vector<int>>{t.l_solution(i, j).assignment};
    }
  }
  return t;
}

/// Indices (a, b, c, d), zero-based, with a != c and b != d such that every
/// minimizer of l_ab assigns c -> d and no minimizer of l_cd assigns a -> b.
struct ContainmentWitness {
  std::size_t a, b, c, d;
};

inline constexpr std::size_t kWitnessMaxSize = 8;

/// Searches for the structure under which the projected Adams-Johnson
/// relaxation is strictly smaller than the Xia-Yuan relaxation. Returns the
/// lexicographically first quadruple, or nothing.
inline std::optional<ContainmentWitness> find_containment_witness(
    const QapInstance& instance) {
  const std::size_t n = instance.size();
  if (n > kWitnessMaxSize)
    throw CapacityError("containment witness search limited to n <= " +
                        std::to_string(kWitnessMaxSize));
  if (n < 2) return std::nullopt;

  Matrix<std::vector<std::vector<int>>> argmin(n, n);
  Matrix<ReducedProblem> reduced(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      reduced(i, j) = reduced_problem(instance, i, j);
      argmin(i, j) = enumerate_argmin(reduced(i, j).cost, Sense::Minimize);
    }

  // Does reduced assignment `x` of subproblem (i, j) place k at l?
  auto assigns = [&](std::size_t i, std::size_t j, const std::vector<int>& x,
                     std::size_t k, std::size_t l) {
    const auto& rp = reduced(i, j);
    for (std::size_t s = 0; s < x.size(); ++s)
      if (rp.rows[s] == k) return rp.cols[static_cast<std::size_t>(x[s])] == l;
    return false;
  };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == b) continue;
          const bool forces_cd = std::all_of(
              argmin(a, b).begin(), argmin(a, b).end(),
              [&](const auto& x) { return assigns(a, b, x, c, d); });
          if (!forces_cd) continue;
          const bool excludes_ab = std::none_of(
              argmin(c, d).begin(), argmin(c, d).end(),
              [&](const auto& x) { return assigns(c, d, x, a, b); });
          if (excludes_ab) return ContainmentWitness{a, b, c, d};
        }
      }
  return std::nullopt;
}

}  // namespace qapcut

#endif  // QAPCUT_LAP_HPP_
