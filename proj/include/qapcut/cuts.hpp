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

// ab-cuts for the Xia-Yuan relaxation and the Adams-Johnson projection cone.
//
// An ab-cut reads  z_ab >= coef_ab * x_ab - sum_{k!=a,l!=b} delta_kl x_kl
// and comes from the dual of a capacitated transportation problem over the
// reduced (a,b) index set.

#ifndef QAPCUT_CUTS_HPP_
#define QAPCUT_CUTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/lap.hpp"
#include "qapcut/linearizations.hpp"
#include "qapcut/lp.hpp"
#include "qapcut/matrix.hpp"

namespace qapcut {

inline constexpr double kViolationThreshold = 1e-6;
inline constexpr double kCutTolerance = 1e-7;

struct AbCut {
  std::size_t a = 0;
  std::size_t b = 0;
  double coef_ab = 0.0;
  /// (n-1) x (n-1), local row s <-> k = s < a ? s : s + 1 (same for l, b).
  RealMatrix delta;
  /// Separation dual objective at the point the cut was generated for.
  double dual_objective = 0.0;

  std::size_t size() const noexcept { return delta.rows() + 1; }

  /// delta_kl in instance indices; 0 on row a and column b.
  double delta_at(std::size_t k, std::size_t l) const {
    if (k == a || l == b) return 0.0;
    return delta(k < a ? k : k - 1, l < b ? l : l - 1);
  }

  /// coef_ab x_ab - sum delta_kl x_kl.
  double rhs(const RealMatrix& x) const {
    double v = coef_ab * x(a, b);
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t l = 0; l < size(); ++l) v -= delta_at(k, l) * x(k, l);
    return v;
  }

  /// Amount by which (x, z) violates the cut (negative when satisfied).
  double violation(const RealMatrix& x, const RealMatrix& z) const { return rhs(x) - z(a, b); }
};

/// The cut z_ab >= l_ab x_ab, i.e. an ab-cut with delta = 0.
inline AbCut l_cut(const BoundTables& bounds, std::size_t a, std::size_t b) {
  const std::size_t n = bounds.size();
  return AbCut{a, b, bounds.l(a, b), RealMatrix(n - 1, n - 1, 0.0), 0.0};
}

/// True iff every assignment with its induced z satisfies the cut.
inline constexpr std::size_t kCutCheckMaxSize = 6;

inline bool cut_is_valid(const QapInstance& instance, const AbCut& cut,
                         double tolerance = kCutTolerance) {
  const std::size_t n = instance.size();
  if (n > kCutCheckMaxSize)
    throw CapacityError("exhaustive cut check limited to n <= " +
                        std::to_string(kCutCheckMaxSize));
  if (cut.size() != n || cut.a >= n || cut.b >= n)
    throw ArgumentError("cut does not match instance size");
  bool ok = true;
  for_each_permutation(n, [&](const std::vector<int>& map) {
    const Permutation perm(map);
    const RealMatrix x = to_x_matrix(perm).matrix();
    const RealMatrix z = induced_z(instance, perm);
    if (cut.violation(x, z) > tolerance) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

/// A-priori test: false when no violated ab-cut can exist for (a, b) at x*.
/// That is the case if x*_ab = 0 or if some minimizer xbar of l_ab fits
/// under x* / x*_ab.
inline bool prefilter(std::size_t a, std::size_t b, const DoublyStochasticPoint& x_star,
                      const BoundTables& bounds) {
  const std::size_t n = x_star.size();
  if (bounds.size() != n) throw ArgumentError("bound tables do not match point size");
  const double xab = x_star(a, b);
  if (xab <= 1e-9) return false;
  for (const std::vector<int>& xbar : bounds.l_argmin(a, b)) {
    bool fits = true;
    for (std::size_t s = 0; s < xbar.size() && fits; ++s) {
      const std::size_t k = s < a ? s : s + 1;
      const auto t = static_cast<std::size_t>(xbar[s]);
      const std::size_t l = t < b ? t : t + 1;
      fits = x_star(k, l) / xab >= 1.0 - 1e-9;
    }
    if (fits) return false;
  }
  return true;
}

enum class SeparationStatus { CutFound, NoViolation, Skipped };

inline const char* to_string(SeparationStatus s) {
  switch (s) {
    case SeparationStatus::CutFound: return "cut-found";
    case SeparationStatus::NoViolation: return "no-violation";
    case SeparationStatus::Skipped: return "skipped";
  }
  return "?";
}

struct SeparationOutcome {
  SeparationStatus status = SeparationStatus::Skipped;
  std::optional<AbCut> cut;
  /// Dual objective minus z*_ab.
  double violation = 0.0;
  /// True when the separation LP was infeasible and the cut was taken from
  /// its Farkas ray.
  bool from_farkas = false;
};

struct SeparationOptions {
  bool use_prefilter = true;
  double threshold = kViolationThreshold;
  SimplexOptions simplex{};
  /// Receives diagnostics; nullptr writes to std::clog.
  std::function<void(const std::string&)> log;
};

namespace detail {

inline void emit(const SeparationOptions& opt, const std::string& msg) {
  if (opt.log)
    opt.log(msg);
  else
    std::clog << "qapcut: " << msg << '\n';
}

inline std::string pair_name(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

}  // namespace detail

/// Solves the separation problem for the pair (a, b) at (x*, z*):
///   min sum p_ak d_bl x_kl
///   s.t. -sum_k x_kl = -x*_ab (beta1_l), -sum_l x_kl = -x*_ab (beta2_k),
///        -x_kl >= -x*_kl (delta_kl >= 0), x >= 0,
/// over k != a, l != b, and turns the optimal dual into a cut when its value
/// exceeds z*_ab by more than the threshold.
inline SeparationOutcome separate_ab(const QapInstance& instance, const BoundTables& bounds,
                                     std::size_t a, std::size_t b,
                                     const DoublyStochasticPoint& x_star,
                                     const RealMatrix& z_star,
                                     const SeparationOptions& options = {}) {
  const std::size_t n = instance.size();
  if (n < 2) throw ArgumentError("separation needs n >= 2");
  if (a >= n || b >= n) throw ArgumentError("pair index out of range");
  if (x_star.size() != n || z_star.rows() != n || z_star.cols() != n || bounds.size() != n)
    throw ArgumentError("point size does not match instance");

  SeparationOutcome out;
  if (options.use_prefilter && !prefilter(a, b, x_star, bounds)) return out;

  const std::size_t m = n - 1;
  const ReducedProblem rp = reduced_problem(instance, a, b);
  const double xab = x_star(a, b);

  LpModel lp(Sense::Minimize);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t)
      lp.add_variable("x" + detail::idx({rp.rows[s], rp.cols[t]}), 0.0, kInfinity, false,
                      rp.cost(s, t));
  auto var = [m](std::size_t s, std::size_t t) { return static_cast<int>(s * m + t); };
  for (std::size_t t = 0; t < m; ++t) {
    std::vector<Term> row;
    for (std::size_t s = 0; s < m; ++s) row.push_back({var(s, t), -1.0});
    lp.add_constraint("beta1" + detail::idx({rp.cols[t]}), std::move(row), Relation::Equal, -xab);
  }
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<Term> row;
    for (std::size_t t = 0; t < m; ++t) row.push_back({var(s, t), -1.0});
    lp.add_constraint("beta2" + detail::idx({rp.rows[s]}), std::move(row), Relation::Equal, -xab);
  }
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t)
      lp.add_constraint("delta" + detail::idx({rp.rows[s], rp.cols[t]}), {{var(s, t), -1.0}},
                        Relation::GreaterEqual, -x_star(rp.rows[s], rp.cols[t]));

  const LpSolution sol = solve(lp, options.simplex);

  std::vector<double> y;
  if (sol.status == LpStatus::Optimal) {
    y = sol.duals;
  } else if (sol.status == LpStatus::Infeasible && sol.farkas) {
    // Dual unbounded: move from the assignment duals (feasible for the
    // dual at any x*) along the ray until the violation reaches 1.
    const LapResult& lap = bounds.l_solution(a, b);
    std::vector<double> y0(lp.num_constraints(), 0.0);
    for (std::size_t t = 0; t < m; ++t) y0[t] = -lap.col_duals[t];
    for (std::size_t s = 0; s < m; ++s) y0[m + s] = -lap.row_duals[s];
    double y0b = 0.0, fb = 0.0;
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
      y0b += y0[i] * lp.constraints()[i].rhs;
      fb += (*sol.farkas)[i] * lp.constraints()[i].rhs;
    }
    if (!(fb > 0.0)) throw StateError("separation LP: Farkas ray does not certify infeasibility");
    const double t = std::max(0.0, (z_star(a, b) + 1.0 - y0b) / fb);
    y.resize(y0.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = y0[i] + t * (*sol.farkas)[i];
    out.from_farkas = true;
    detail::emit(options, "separation LP for pair " + detail::pair_name(a, b) +
                              " is infeasible; cut built from its Farkas ray");
  } else {
    throw StateError(std::string("separation LP for pair ") + detail::pair_name(a, b) +
                     " ended with status " + to_string(sol.status));
  }

  AbCut cut;
  cut.a = a;
  cut.b = b;
  cut.delta = RealMatrix(m, m, 0.0);
  double beta_sum = 0.0;
  for (std::size_t i = 0; i < 2 * m; ++i) beta_sum += y[i];
  cut.coef_ab = -beta_sum;
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      const double d = y[2 * m + s * m + t];
      cut.delta(s, t) = std::abs(d) <= 1e-12 ? 0.0 : d;
    }
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dual_obj += y[i] * lp.constraints()[i].rhs;
  cut.dual_objective = dual_obj;
  out.violation = dual_obj - z_star(a, b);
  if (out.violation > options.threshold) {
    out.status = SeparationStatus::CutFound;
    out.cut = std::move(cut);
  } else {
    out.status = SeparationStatus::NoViolation;
  }
  return out;
}

/// Multipliers (alpha, beta1, beta2, gamma) of the projection cone of the
/// lifted Adams-Johnson system. beta1(l, i, j) multiplies the sum row over
/// index i for fixed (j = l, k = i, l = j) in y_{.,l,i,j}; beta2(k, i, j)
/// likewise for the sum over the location index.
class ConeElement {
 public:
  ConeElement() = default;
  explicit ConeElement(std::size_t n)
      : n_(n), alpha_(n, n, 0.0), beta1_(n * n * n, 0.0), beta2_(n * n * n, 0.0),
        gamma_(n * n * n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }

  double& alpha(std::size_t i, std::size_t j) { return alpha_(i, j); }
  double alpha(std::size_t i, std::size_t j) const { return alpha_(i, j); }
  double& beta1(std::size_t l, std::size_t i, std::size_t j) { return beta1_[(l * n_ + i) * n_ + j]; }
  double beta1(std::size_t l, std::size_t i, std::size_t j) const {
    return beta1_[(l * n_ + i) * n_ + j];
  }
  double& beta2(std::size_t k, std::size_t i, std::size_t j) { return beta2_[(k * n_ + i) * n_ + j]; }
  double beta2(std::size_t k, std::size_t i, std::size_t j) const {
    return beta2_[(k * n_ + i) * n_ + j];
  }
  double& gamma(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return gamma_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  double gamma(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return gamma_[((i * n_ + j) * n_ + k) * n_ + l];
  }

  const RealMatrix& alpha_matrix() const noexcept { return alpha_; }

  /// Coefficient of x_ij in the implied inequality
  ///   sum alpha_ij z_ij <= sum (sum_l beta1_lij + sum_k beta2_kij) x_ij.
  RealMatrix x_coefficients() const {
    RealMatrix c(n_, n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t l = 0; l < n_; ++l)
          if (l != j) c(i, j) += beta1(l, i, j);
        for (std::size_t k = 0; k < n_; ++k)
          if (k != i) c(i, j) += beta2(k, i, j);
      }
    return c;
  }

  /// Largest absolute entry; used to normalize certificates.
  double max_abs() const {
    double m = 0.0;
    for (double v : alpha_.values()) m = std::max(m, std::abs(v));
    for (const auto* vec : {&beta1_, &beta2_, &gamma_})
      for (double v : *vec) m = std::max(m, std::abs(v));
    return m;
  }

  ConeElement& operator*=(double s) {
    alpha_ *= s;
    for (auto* vec : {&beta1_, &beta2_, &gamma_})
      for (double& v : *vec) v *= s;
    return *this;
  }

 private:
  std::size_t n_ = 0;
  RealMatrix alpha_;
  std::vector<double> beta1_, beta2_, gamma_;
};

/// Checks  p_ik d_jl alpha_ij <= beta1_jkl + beta2_ikl + gamma_ijkl  and
/// gamma_ijkl = -gamma_klij for all i != k, j != l.
inline bool verify_cone_membership(const QapInstance& instance, const ConeElement& elem,
                                   double tolerance = kCutTolerance) {
  const std::size_t n = instance.size();
  if (elem.size() != n)
    throw ArgumentError("cone element has size " + std::to_string(elem.size()) +
                        ", instance has n = " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isnan(elem.alpha(i, j))) throw ArgumentError("missing alpha entry");
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          const double b1 = elem.beta1(j, k, l), b2 = elem.beta2(i, k, l);
          const double g = elem.gamma(i, j, k, l), g_sym = elem.gamma(k, l, i, j);
          if (std::isnan(b1) || std::isnan(b2) || std::isnan(g))
            throw ArgumentError("missing cone entry at" + detail::idx({i, j, k, l}));
          if (instance.p(i, k) * instance.d(j, l) * elem.alpha(i, j) > b1 + b2 + g + tolerance)
            return false;
          if (std::abs(g + g_sym) > tolerance) return false;
        }
      }
    }
  return true;
}

/// Multipliers deriving z_ab >= l_ab x_ab from the projection: alpha_ab = -1,
/// beta from the negated duals of the (a,b) min-assignment problem and
/// gamma = -/+ p_ak d_bl on tuples through (a,b).
inline ConeElement assemble_l_multipliers(const QapInstance& instance, std::size_t a,
                                          std::size_t b) {
  const std::size_t n = instance.size();
  if (n < 2 || a >= n || b >= n) throw ArgumentError("invalid pair for multiplier assembly");
  const ReducedProblem rp = reduced_problem(instance, a, b);
  const LapResult lap = solve_lap(rp.cost, Sense::Minimize);
  ConeElement e(n);
  e.alpha(a, b) = -1.0;
  for (std::size_t t = 0; t < n - 1; ++t) e.beta1(rp.cols[t], a, b) = -lap.col_duals[t];
  for (std::size_t s = 0; s < n - 1; ++s) e.beta2(rp.rows[s], a, b) = -lap.row_duals[s];
  for (std::size_t k = 0; k < n; ++k) {
    if (k == a) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == b) continue;
      const double pd = instance.p(a, k) * instance.d(b, l);
      e.gamma(a, b, k, l) = -pd;
      e.gamma(k, l, a, b) = pd;
    }
  }
  return e;
}

/// Multipliers deriving z_ab >= sum p_ak d_bl x_kl + u_ab (x_ab - 1) from the
/// projection, built from the duals of the (a,b) max-assignment problem with
/// halved costs. Where the gamma cases overlap, on (a,d,c,b) and
/// (c,b,a,d), gamma is set to 0.
inline ConeElement assemble_u_multipliers(const QapInstance& instance, std::size_t a,
                                          std::size_t b) {
  const std::size_t n = instance.size();
  if (n < 2 || a >= n || b >= n) throw ArgumentError("invalid pair for multiplier assembly");
  const ReducedProblem rp = reduced_problem(instance, a, b, 0.5);
  const LapResult lap = solve_lap(rp.cost, Sense::Maximize);
  std::vector<double> b1(n, 0.0), b2(n, 0.0);  // indexed by l != b, k != a
  for (std::size_t t = 0; t < n - 1; ++t) b1[rp.cols[t]] = lap.col_duals[t];
  for (std::size_t s = 0; s < n - 1; ++s) b2[rp.rows[s]] = lap.row_duals[s];
  auto half_pd = [&](std::size_t i, std::size_t j) {
    return instance.p(a, i) * instance.d(b, j) / 2.0;
  };

  ConeElement e(n);
  e.alpha(a, b) = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != a && j != b) {
        e.beta1(b, i, j) = -half_pd(i, j);
        e.beta2(a, i, j) = -half_pd(i, j);
      }
  for (std::size_t d = 0; d < n; ++d) {
    if (d == b) continue;
    for (std::size_t l = 0; l < n; ++l)
      if (l != d) e.beta1(l, a, d) = l == b ? b1[d] : b1[l];
    for (std::size_t k = 0; k < n; ++k)
      if (k != a) e.beta2(k, a, d) = b2[k];
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (c == a) continue;
    for (std::size_t l = 0; l < n; ++l)
      if (l != b) e.beta1(l, c, b) = b1[l];
    for (std::size_t k = 0; k < n; ++k)
      if (k != c) e.beta2(k, c, b) = k == a ? b2[c] : b2[k];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          if ((i == a && j == b) || (k == a && l == b)) continue;
          const bool overlap = (i == a && j != b && k != a && l == b) ||
                               (k == a && l != b && i != a && j == b);
          if (overlap) continue;
          double g = 0.0;
          if (k == a && l != b)
            g = -half_pd(i, j);
          else if (i == a && j != b)
            g = half_pd(k, l);
          else if (k != a && l == b)
            g = -half_pd(i, j);
          else if (i != a && j == b)
            g = half_pd(k, l);
          e.gamma(i, j, k, l) = g;
        }
      }
  return e;
}

/// Violated inequality  sum alpha_ij z_ij <= sum x_coef_ij x_ij  certified by
/// the Farkas ray of the lifting problem.
struct ProjectionCut {
  ConeElement element;
  RealMatrix z_coef;
  RealMatrix x_coef;
  /// sum alpha z* - sum x_coef x*  (> 0).
  double violation = 0.0;
};

inline constexpr std::size_t kFullProjectionMaxSize = 5;

/// Lifted Adams-Johnson system LAJ+: the Adams-Johnson model plus free z
/// variables tied to y by z_ij = sum p_ik d_jl y_ijkl (rows lift[i,j]).
inline LinearizationModel build_aj_lifted(const QapInstance& instance) {
  LinearizationModel m = build_aj(instance);
  const std::size_t n = instance.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.layout.set_z(i, j, m.lp.add_variable("z" + detail::idx({i, j}), -kInfinity, kInfinity));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> t{{m.layout.z(i, j), 1.0}};
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (k != i && l != j)
            t.push_back({m.layout.y(i, j, k, l), -instance.p(i, k) * instance.d(j, l)});
      m.lp.add_constraint("lift" + detail::idx({i, j}), std::move(t), Relation::Equal, 0.0);
    }
  return m;
}

/// Decides whether (x*, z*) lies in the projection of LAJ+ onto (x, z). If
/// it does, returns nothing. Otherwise returns the cone element read off the
/// Farkas ray (normalized to max |entry| = 1) and the violated inequality.
inline std::optional<ProjectionCut> separate_full_projection(const QapInstance& instance,
                                                             const DoublyStochasticPoint& x_star,
                                                             const RealMatrix& z_star,
                                                             const SimplexOptions& simplex = {}) {
  const std::size_t n = instance.size();
  if (n > kFullProjectionMaxSize)
    throw CapacityError("full-projection separation limited to n <= " +
                        std::to_string(kFullProjectionMaxSize) + ", got n = " +
                        std::to_string(n));
  if (n < 2) throw ArgumentError("full-projection separation needs n >= 2");
  if (x_star.size() != n || z_star.rows() != n || z_star.cols() != n)
    throw ArgumentError("point size does not match instance");

  const LinearizationModel lifted = build_aj_lifted(instance);
  std::vector<std::pair<int, double>> fixes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      fixes.emplace_back(lifted.layout.x(i, j), x_star(i, j));
      fixes.emplace_back(lifted.layout.z(i, j), z_star(i, j));
    }
  const LpModel fixed = fix_variables(lifted.lp, fixes);
  const LpSolution sol = solve(fixed, simplex);
  if (sol.status == LpStatus::Optimal) return std::nullopt;
  if (sol.status != LpStatus::Infeasible || !sol.farkas)
    throw StateError(std::string("lifting problem ended with status ") + to_string(sol.status));

  const std::vector<double>& f = *sol.farkas;
  ConeElement e(n);
  for (std::size_t r = 0; r < fixed.num_constraints(); ++r) {
    const Constraint& row = fixed.constraints()[r];
    const double fr = f[r];
    if (fr == 0.0) continue;
    const auto& name = row.name;
    auto nums = [&name]() {
      std::vector<std::size_t> v;
      std::size_t pos = name.find('[') + 1;
      while (pos < name.size()) {
        const std::size_t end = name.find_first_of(",]", pos);
        v.push_back(std::stoul(name.substr(pos, end - pos)) - 1);
        pos = end + 1;
      }
      return v;
    };
    if (name.starts_with("lift")) {
      const auto v = nums();
      e.alpha(v[0], v[1]) = -fr;
    } else if (name.starts_with("aj7")) {
      const auto v = nums();  // j, k, l
      e.beta1(v[0], v[1], v[2]) = -fr;
    } else if (name.starts_with("aj8")) {
      const auto v = nums();  // i, k, l
      e.beta2(v[0], v[1], v[2]) = -fr;
    } else if (name.starts_with("aj9")) {
      const auto v = nums();  // row y_ijkl - y_klij = 0
      e.gamma(v[0], v[1], v[2], v[3]) = -fr;
      e.gamma(v[2], v[3], v[0], v[1]) = fr;
    }
    // Assignment rows only involve the fixed x; with x* doubly stochastic
    // their contribution cancels.
  }
  const double scale = e.max_abs();
  if (scale > 0.0) e *= 1.0 / scale;

  ProjectionCut cut{e, e.alpha_matrix(), e.x_coefficients(), 0.0};
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v += cut.z_coef(i, j) * z_star(i, j) - cut.x_coef(i, j) * x_star(i, j);
  cut.violation = v;
  return cut;
}

/// Insertion-ordered set of ab-cuts; duplicates (same pair, every
/// coefficient within the tolerance) are rejected.
class CutPool {
 public:
  explicit CutPool(double tolerance = kCutTolerance) : tol_(tolerance) {}

  bool add(AbCut cut) {
    for (const AbCut& c : cuts_)
      if (same(c, cut)) return false;
    cuts_.push_back(std::move(cut));
    return true;
  }

  std::size_t size() const noexcept { return cuts_.size(); }
  bool empty() const noexcept { return cuts_.empty(); }
  const std::vector<AbCut>& cuts() const noexcept { return cuts_; }
  const AbCut& operator[](std::size_t i) const { return cuts_[i]; }

 private:
  bool same(const AbCut& x, const AbCut& y) const {
    if (x.a != y.a || x.b != y.b || x.delta.rows() != y.delta.rows()) return false;
    if (std::abs(x.coef_ab - y.coef_ab) > tol_) return false;
    const auto dx = x.delta.values(), dy = y.delta.values();
    for (std::size_t i = 0; i < dx.size(); ++i)
      if (std::abs(dx[i] - dy[i]) > tol_) return false;
    return true;
  }

  double tol_;
  std::vector<AbCut> cuts_;
};

/// Appends  z_ab - coef_ab x_ab + sum delta_kl x_kl >= 0  to an XY-type model.
inline int add_cut_row(LinearizationModel& model, const AbCut& cut, const std::string& name) {
  if (!model.layout.has_z()) throw ArgumentError("ab-cuts need a model with z variables");
  const std::size_t n = model.layout.size();
  std::vector<Term> t{{model.layout.z(cut.a, cut.b), 1.0},
                      {model.layout.x(cut.a, cut.b), -cut.coef_ab}};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const double d = cut.delta_at(k, l);
      if (d != 0.0) t.push_back({model.layout.x(k, l), d});
    }
  return model.lp.add_constraint(name, std::move(t), Relation::GreaterEqual, 0.0);
}

}  // namespace qapcut

#endif  // QAPCUT_CUTS_HPP_
