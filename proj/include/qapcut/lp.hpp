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

// Linear programs and a dense revised simplex for them.
//
// Every row  a x (<=, =, >=) b  gets a slack s with  a x + s = b  and bounds
// chosen by the relation, so the working problem is
//
//   min c x   s.t.  [A I] (x, s) = b,   lo <= (x, s) <= hi.
//
// Phase 1 adds one artificial per row and minimizes their sum; phase 2
// optimizes the real objective. The basis inverse is kept explicitly and
// rebuilt from scratch every kRefactorInterval pivots.

#ifndef QAPCUT_LP_HPP_
#define QAPCUT_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/matrix.hpp"
#include "qapcut/sense.hpp"

namespace qapcut {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// A linear program with optional integrality marks. Integrality is recorded
/// for export and for branch-and-cut; `solve` always treats the relaxation.
class LpModel {
 public:
  LpModel() = default;
  explicit LpModel(Sense sense) : sense_(sense) {}

  int add_variable(std::string name, double lower, double upper,
                   bool integer = false, double objective = 0.0) {
    if (std::isnan(lower) || std::isnan(upper) || lower == kInfinity ||
        upper == -kInfinity || lower > upper)
      throw ArgumentError("inconsistent bounds for variable '" + name + "'");
    vars_.push_back({std::move(name), lower, upper, integer});
    objective_.push_back(objective);
    return static_cast<int>(vars_.size()) - 1;
  }

  /// Adds a row. Repeated variables in `terms` are merged; zero
  /// coefficients dropped.
  int add_constraint(std::string name, std::vector<Term> terms, Relation rel,
                     double rhs) {
    if (!std::isfinite(rhs))
      throw ArgumentError("non-finite right-hand side in row '" + name + "'");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (const Term& t : terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= vars_.size())
        throw ArgumentError("row '" + name + "' references unknown variable " +
                            std::to_string(t.var));
      if (!std::isfinite(t.coef))
        throw ArgumentError("non-finite coefficient in row '" + name + "'");
      if (!merged.empty() && merged.back().var == t.var)
        merged.back().coef += t.coef;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    rows_.push_back({std::move(name), std::move(merged), rel, rhs});
    return static_cast<int>(rows_.size()) - 1;
  }

  void set_objective_coefficient(int var, double c) {
    objective_.at(static_cast<std::size_t>(var)) = c;
  }
  void set_objective_constant(double c) { objective_constant_ = c; }
  void set_sense(Sense s) { sense_ = s; }

  void set_bounds(int var, double lower, double upper) {
    auto& v = vars_.at(static_cast<std::size_t>(var));
    if (lower > upper) throw ArgumentError("inconsistent bounds for '" + v.name + "'");
    v.lower = lower;
    v.upper = upper;
  }
  void set_integer(int var, bool integer) {
    vars_.at(static_cast<std::size_t>(var)).integer = integer;
  }

  std::size_t num_variables() const noexcept { return vars_.size(); }
  std::size_t num_constraints() const noexcept { return rows_.size(); }
  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const Variable& variable(int j) const { return vars_.at(static_cast<std::size_t>(j)); }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  const Constraint& constraint(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& objective() const noexcept { return objective_; }
  double objective_constant() const noexcept { return objective_constant_; }
  Sense sense() const noexcept { return sense_; }

  /// Index of the variable named `name`, if any. Linear scan.
  std::optional<int> find_variable(const std::string& name) const {
    for (std::size_t j = 0; j < vars_.size(); ++j)
      if (vars_[j].name == name) return static_cast<int>(j);
    return std::nullopt;
  }

  double objective_value(const std::vector<double>& x) const {
    double v = objective_constant_;
    for (std::size_t j = 0; j < vars_.size(); ++j) v += objective_[j] * x[j];
    return v;
  }

  double row_activity(std::size_t i, const std::vector<double>& x) const {
    double a = 0.0;
    for (const Term& t : rows_[i].terms) a += t.coef * x[static_cast<std::size_t>(t.var)];
    return a;
  }

  /// Largest violation of any row or bound by `x` (0 when feasible).
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      worst = std::max(worst, vars_[j].lower - x[j]);
      worst = std::max(worst, x[j] - vars_[j].upper);
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double a = row_activity(i, x);
      const double b = rows_[i].rhs;
      switch (rows_[i].relation) {
        case Relation::LessEqual: worst = std::max(worst, a - b); break;
        case Relation::GreaterEqual: worst = std::max(worst, b - a); break;
        case Relation::Equal: worst = std::max(worst, std::abs(a - b)); break;
      }
    }
    return worst;
  }

 private:
  Sense sense_ = Sense::Minimize;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> objective_;
  double objective_constant_ = 0.0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

/// Result of a solve. Sign conventions, for either sense:
///   duals[i]         = d(objective) / d(rhs_i)
///   reduced_costs[j] = c_j - sum_i duals[i] a_ij
/// `farkas`, present when Infeasible, is a ray f of the dual: f_i >= 0 on
/// `>=` rows, f_i <= 0 on `<=` rows, and
///   f . b  >  max over the variable bounds of  (f A) x,
/// which no x satisfying the rows can meet.
struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> primal;
  double objective_value = 0.0;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::optional<std::vector<double>> farkas;
  std::size_t iterations = 0;

  bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

struct SimplexOptions {
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-7;
  /// Consecutive steps without objective progress before switching to Bland's rule.
  std::size_t degeneracy_streak = 20;
  /// 0 means 50 * (rows + cols).
  std::size_t iteration_limit = 0;
};

namespace detail {

class Simplex {
 public:
  Simplex(const LpModel& model, const SimplexOptions& opt)
      : model_(model), opt_(opt) {
    m_ = model.num_constraints();
    nv_ = model.num_variables();
    ncols_ = nv_ + 2 * m_;
    cols_.resize(ncols_);
    lo_.resize(ncols_);
    hi_.resize(ncols_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const Term& t : model.constraint(static_cast<int>(i)).terms)
        cols_[static_cast<std::size_t>(t.var)].push_back({i, t.coef});
      b_.push_back(model.constraint(static_cast<int>(i)).rhs);
    }
    for (std::size_t j = 0; j < nv_; ++j) {
      lo_[j] = model.variable(static_cast<int>(j)).lower;
      hi_[j] = model.variable(static_cast<int>(j)).upper;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t s = nv_ + i;
      cols_[s].push_back({i, 1.0});
      switch (model.constraint(static_cast<int>(i)).relation) {
        case Relation::LessEqual: lo_[s] = 0.0; hi_[s] = kInfinity; break;
        case Relation::GreaterEqual: lo_[s] = -kInfinity; hi_[s] = 0.0; break;
        case Relation::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
      }
    }
    limit_ = opt.iteration_limit ? opt.iteration_limit : 50 * (m_ + nv_) + 100;
  }

  LpSolution run() {
    LpSolution sol;
    initialize_phase1();
    std::vector<double> cost1(ncols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost1[nv_ + m_ + i] = 1.0;

    const LpStatus p1 = iterate(cost1, true);
    sol.iterations = iterations_;
    if (p1 == LpStatus::IterationLimit) return finish_limit(sol);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) infeasibility += x_[nv_ + m_ + i];
    if (infeasibility > opt_.primal_tolerance) {
      sol.status = LpStatus::Infeasible;
      sol.farkas = row_prices(cost1);
      return sol;
    }

    // Artificials are frozen at zero; basic ones are pivoted out where a
    // replacement column exists, otherwise their row is redundant.
    for (std::size_t i = 0; i < m_; ++i) {
      hi_[nv_ + m_ + i] = 0.0;
      x_[nv_ + m_ + i] = std::clamp(x_[nv_ + m_ + i], 0.0, 0.0);
    }
    drive_out_artificials();
    recompute_basic_values();

    std::vector<double> cost2(ncols_, 0.0);
    const double sign = model_.sense() == Sense::Minimize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < nv_; ++j) cost2[j] = sign * model_.objective()[j];

    LpStatus p2 = iterate(cost2, false);
    sol.iterations = iterations_;
    if (p2 == LpStatus::IterationLimit) return finish_limit(sol);
    if (p2 == LpStatus::Unbounded) {
      sol.status = LpStatus::Unbounded;
      sol.primal.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nv_));
      return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.primal.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nv_));
    for (std::size_t j = 0; j < nv_; ++j)
      sol.primal[j] = std::clamp(sol.primal[j], lo_[j], hi_[j]);
    sol.objective_value = model_.objective_value(sol.primal);
    std::vector<double> y = row_prices(cost2);
    sol.reduced_costs.resize(nv_);
    for (std::size_t j = 0; j < nv_; ++j)
      sol.reduced_costs[j] = sign * (cost2[j] - dot_column(y, j));
    for (double& v : y) v *= sign;
    sol.duals = std::move(y);
    return sol;
  }

 private:
  enum class At : unsigned char { Basic, Lower, Upper, Zero };

  struct Entry {
    std::size_t row;
    double value;
  };

  void initialize_phase1() {
    x_.assign(ncols_, 0.0);
    at_.assign(ncols_, At::Lower);
    for (std::size_t j = 0; j < nv_ + m_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        at_[j] = At::Lower;
      } else if (std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
        at_[j] = At::Upper;
      } else {
        x_[j] = 0.0;
        at_[j] = At::Zero;
      }
    }
    std::vector<double> r = b_;
    for (std::size_t j = 0; j < nv_ + m_; ++j)
      for (const Entry& e : cols_[j]) r[e.row] -= e.value * x_[j];
    basis_.resize(m_);
    binv_ = RealMatrix(m_, m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t a = nv_ + m_ + i;
      const double s = r[i] >= 0.0 ? 1.0 : -1.0;
      cols_[a] = {{i, s}};
      lo_[a] = 0.0;
      hi_[a] = kInfinity;
      x_[a] = std::abs(r[i]);
      at_[a] = At::Basic;
      basis_[i] = a;
      binv_(i, i) = s;
    }
  }

  double dot_column(const std::vector<double>& y, std::size_t j) const {
    double s = 0.0;
    for (const Entry& e : cols_[j]) s += y[e.row] * e.value;
    return s;
  }

  // y = c_B^T B^{-1}
  std::vector<double> row_prices(const std::vector<double>& cost) const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const auto row = binv_.row(i);
      for (std::size_t r = 0; r < m_; ++r) y[r] += cb * row[r];
    }
    return y;
  }

  // alpha = B^{-1} A_q
  std::vector<double> ftran(std::size_t q) const {
    std::vector<double> alpha(m_, 0.0);
    for (const Entry& e : cols_[q])
      for (std::size_t i = 0; i < m_; ++i) alpha[i] += binv_(i, e.row) * e.value;
    return alpha;
  }

  bool eligible(std::size_t j, double d) const {
    if (lo_[j] == hi_[j]) return false;
    switch (at_[j]) {
      case At::Lower: return d < -opt_.dual_tolerance;
      case At::Upper: return d > opt_.dual_tolerance;
      case At::Zero: return std::abs(d) > opt_.dual_tolerance;
      case At::Basic: return false;
    }
    return false;
  }

  // Phase 1 cannot be unbounded, so an unblocked direction there is noise.
  LpStatus iterate(const std::vector<double>& cost, bool phase1) {
    std::size_t degenerate = 0;
    std::size_t since_refactor = 0;
    bool verified = false;
    std::vector<char> rejected(ncols_, 0);
    while (true) {
      if (iterations_ >= limit_) return LpStatus::IterationLimit;
      const bool bland = degenerate >= opt_.degeneracy_streak;
      const std::vector<double> y = row_prices(cost);

      std::size_t q = ncols_;
      double dq = 0.0;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (at_[j] == At::Basic || rejected[j]) continue;
        const double d = cost[j] - dot_column(y, j);
        if (!eligible(j, d)) continue;
        if (bland) {
          q = j;
          dq = d;
          break;
        }
        if (std::abs(d) > std::abs(dq)) {
          q = j;
          dq = d;
        }
      }
      if (q == ncols_) {
        // Confirm optimality against a freshly factored basis once.
        if (verified || since_refactor == 0) return LpStatus::Optimal;
        refactor();
        since_refactor = 0;
        verified = true;
        continue;
      }
      verified = false;

      const double dir = dq < 0.0 ? 1.0 : -1.0;
      const std::vector<double> alpha = ftran(q);

      // Harris two-pass ratio test on x_B(t) = x_B - dir * t * alpha. Pass 1
      // finds the step allowed when bounds are relaxed by a small tolerance;
      // pass 2 picks, among rows blocking within that step, the largest
      // pivot (or the smallest basic index under Bland's rule).
      double amax = 0.0;
      for (double a : alpha) amax = std::max(amax, std::abs(a));
      const double min_pivot = std::max(opt_.pivot_tolerance, 1e-9 * amax);
      auto blocking = [&](std::size_t i, double slack, double& t, bool& to_upper) {
        const double rate = -dir * alpha[i];
        if (std::abs(alpha[i]) <= min_pivot) return false;
        const std::size_t bj = basis_[i];
        if (rate < 0.0) {
          if (!std::isfinite(lo_[bj])) return false;
          t = (x_[bj] - lo_[bj] + slack) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(hi_[bj])) return false;
          t = (hi_[bj] - x_[bj] + slack) / rate;
          to_upper = true;
        }
        t = std::max(t, 0.0);
        return true;
      };
      const double harris = opt_.primal_tolerance * 1e-2;
      double t_max = kInfinity;
      for (std::size_t i = 0; i < m_; ++i) {
        double t;
        bool up;
        if (blocking(i, harris, t, up)) t_max = std::min(t_max, t);
      }
      // Under Bland's rule, rows with a tiny pivot only win when nothing
      // sturdier blocks.
      double tie_mag = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        double t;
        bool up;
        if (blocking(i, 0.0, t, up) && t <= t_max) tie_mag = std::max(tie_mag, std::abs(alpha[i]));
      }
      tie_mag *= 1e-3;
      double t_best = kInfinity;
      std::size_t leave = m_;
      double leave_mag = 0.0;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        double t;
        bool to_upper;
        if (!blocking(i, 0.0, t, to_upper) || t > t_max) continue;
        const double mag = std::abs(alpha[i]);
        if (bland && mag < tie_mag) continue;
        const bool take = leave == m_ || (bland ? basis_[i] < basis_[leave] : mag > leave_mag);
        if (take) {
          t_best = t;
          leave = i;
          leave_mag = mag;
          leave_to_upper = to_upper;
        }
      }
      const double flip = hi_[q] - lo_[q];
      ++iterations_;

      if (!std::isfinite(flip) && leave == m_) {
        if (since_refactor > 0) {
          refactor();
          since_refactor = 0;
          continue;
        }
        if (!phase1 && std::abs(dq) > 1e-6) return LpStatus::Unbounded;
        rejected[q] = 1;
        continue;
      }
      if (flip <= t_best) {
        // Entering variable runs to its other bound; basis unchanged.
        for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= dir * flip * alpha[i];
        x_[q] = dir > 0 ? hi_[q] : lo_[q];
        at_[q] = dir > 0 ? At::Upper : At::Lower;
        degenerate = std::abs(dq) * flip > kProgress ? 0 : degenerate + 1;
        continue;
      }

      const double t = t_best;
      for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= dir * t * alpha[i];
      x_[q] += dir * t;
      const std::size_t out = basis_[leave];
      x_[out] = leave_to_upper ? hi_[out] : lo_[out];
      at_[out] = leave_to_upper ? At::Upper : At::Lower;
      at_[q] = At::Basic;
      basis_[leave] = q;
      pivot(leave, alpha);
      std::fill(rejected.begin(), rejected.end(), 0);
      degenerate = std::abs(dq) * t > kProgress ? 0 : degenerate + 1;

      // Small pivots lose accuracy in the product-form update.
      if (++since_refactor >= kRefactorInterval || leave_mag < 1e-6) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  void pivot(std::size_t r, const std::vector<double>& alpha) {
    const double piv = alpha[r];
    auto prow = binv_.row(r);
    for (double& v : prow) v /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      auto row = binv_.row(i);
      for (std::size_t c = 0; c < m_; ++c) row[c] -= f * prow[c];
    }
  }

  // Rebuilds B^{-1} by Gauss-Jordan elimination and recomputes x_B. Keeps
  // the current inverse if the basis looks singular.
  void refactor() {
    RealMatrix a(m_, 2 * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const Entry& e : cols_[basis_[i]]) a(e.row, i) = e.value;
      a(i, m_ + i) = 1.0;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m_; ++r)
        if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
      if (std::abs(a(p, c)) < 1e-13) return;
      if (p != c)
        for (std::size_t k = 0; k < 2 * m_; ++k) std::swap(a(p, k), a(c, k));
      const double piv = a(c, c);
      for (std::size_t k = c; k < 2 * m_; ++k) a(c, k) /= piv;
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a(r, c);
        if (f == 0.0) continue;
        for (std::size_t k = c; k < 2 * m_; ++k) a(r, k) -= f * a(c, k);
      }
    }
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k) binv_(i, k) = a(i, m_ + k);
    recompute_basic_values();
  }

  void recompute_basic_values() {
    std::vector<double> r = b_;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (at_[j] == At::Basic || x_[j] == 0.0) continue;
      for (const Entry& e : cols_[j]) r[e.row] -= e.value * x_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      const auto row = binv_.row(i);
      for (std::size_t k = 0; k < m_; ++k) v += row[k] * r[k];
      x_[basis_[i]] = v;
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < nv_ + m_) continue;
      // Row i of B^{-1} A gives the pivot candidates.
      const auto brow = binv_.row(i);
      std::size_t best = ncols_;
      double best_mag = opt_.pivot_tolerance * 10.0;
      for (std::size_t j = 0; j < nv_ + m_; ++j) {
        if (at_[j] == At::Basic) continue;
        double v = 0.0;
        for (const Entry& e : cols_[j]) v += brow[e.row] * e.value;
        if (std::abs(v) > best_mag) {
          best_mag = std::abs(v);
          best = j;
        }
      }
      if (best == ncols_) continue;
      const std::vector<double> alpha = ftran(best);
      const std::size_t out = basis_[i];
      x_[out] = 0.0;
      at_[out] = At::Lower;
      at_[best] = At::Basic;
      basis_[i] = best;
      pivot(i, alpha);
    }
  }

  LpSolution& finish_limit(LpSolution& sol) {
    sol.status = LpStatus::IterationLimit;
    sol.primal.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nv_));
    return sol;
  }

  static constexpr std::size_t kRefactorInterval = 100;
  // Objective change below which a step counts as degenerate.
  static constexpr double kProgress = 1e-11;

  const LpModel& model_;
  SimplexOptions opt_;
  std::size_t m_ = 0, nv_ = 0, ncols_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> lo_, hi_, b_, x_;
  std::vector<At> at_;
  std::vector<std::size_t> basis_;
  RealMatrix binv_;
  std::size_t iterations_ = 0;
  std::size_t limit_ = 0;
};

}  // namespace detail

/// Solves the LP relaxation of `model` (integrality flags ignored).
/// Deterministic: Dantzig pricing, switching to Bland's rule after a streak
/// of degenerate pivots.
inline LpSolution solve(const LpModel& model, const SimplexOptions& options = {}) {
  return detail::Simplex(model, options).run();
}

/// Copy of `model` with each listed variable fixed (both bounds set).
inline LpModel fix_variables(const LpModel& model,
                             const std::vector<std::pair<int, double>>& fixes) {
  LpModel out = model;
  for (const auto& [var, value] : fixes) {
    if (var < 0 || static_cast<std::size_t>(var) >= model.num_variables())
      throw ArgumentError("cannot fix unknown variable " + std::to_string(var));
    const Variable& v = model.variable(var);
    if (!(value >= v.lower - 1e-12 && value <= v.upper + 1e-12))
      throw ArgumentError("fixed value " + std::to_string(value) + " outside bounds of '" +
                          v.name + "'");
    const double fixed = std::clamp(value, v.lower, v.upper);
    out.set_bounds(var, fixed, fixed);
  }
  return out;
}

/// b^T y plus the contribution of the active variable bounds, i.e. the
/// objective of the dual solution carried by `solution`.
inline double dual_objective(const LpSolution& solution, const LpModel& model) {
  if (!solution.optimal())
    throw StateError(std::string("dual objective requires an optimal solution, status is ") +
                     to_string(solution.status));
  double v = model.objective_constant();
  for (std::size_t i = 0; i < model.num_constraints(); ++i)
    v += solution.duals[i] * model.constraints()[i].rhs;
  const bool minimize = model.sense() == Sense::Minimize;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const double d = solution.reduced_costs[j];
    const Variable& var = model.variables()[j];
    // Minimization prices a positive reduced cost at the lower bound.
    const bool use_lower = (d > 0.0) == minimize;
    const double bound = use_lower ? var.lower : var.upper;
    v += d * (std::isfinite(bound) ? bound : solution.primal[j]);
  }
  return v;
}

/// Checks a Farkas ray (see LpSolution) by explicit recombination of rows
/// and bounds. Returns the certified gap  f.b - max (fA)x, or nothing when
/// `farkas` does not prove infeasibility.
inline std::optional<double> farkas_gap(const LpModel& model,
                                        const std::vector<double>& farkas,
                                        double tolerance = 1e-9) {
  if (farkas.size() != model.num_constraints()) return std::nullopt;
  std::vector<double> g(model.num_variables(), 0.0);
  double fb = 0.0;
  for (std::size_t i = 0; i < model.num_constraints(); ++i) {
    const Constraint& row = model.constraints()[i];
    const double f = farkas[i];
    if (row.relation == Relation::LessEqual && f > tolerance) return std::nullopt;
    if (row.relation == Relation::GreaterEqual && f < -tolerance) return std::nullopt;
    fb += f * row.rhs;
    for (const Term& t : row.terms) g[static_cast<std::size_t>(t.var)] += f * t.coef;
  }
  double max_lhs = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (std::abs(g[j]) <= tolerance) continue;
    const double bound = g[j] > 0.0 ? model.variables()[j].upper : model.variables()[j].lower;
    if (!std::isfinite(bound)) return std::nullopt;
    max_lhs += g[j] * bound;
  }
  const double gap = fb - max_lhs;
  if (gap <= tolerance) return std::nullopt;
  return gap;
}

}  // namespace qapcut

#endif  // QAPCUT_LP_HPP_
