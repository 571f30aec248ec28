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

// Branch-and-cut over the Xia-Yuan model with ab-cut rounds, and the
// relaxation comparison driver.

#ifndef QAPCUT_BNC_HPP_
#define QAPCUT_BNC_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qapcut/cuts.hpp"
#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/lap.hpp"
#include "qapcut/linearizations.hpp"
#include "qapcut/lp.hpp"
#include "qapcut/matrix.hpp"

namespace qapcut {

struct SolveConfig {
  std::size_t node_limit = 1'000'000;
  std::size_t root_cut_rounds = 50;
  std::size_t node_cut_rounds = 1;
  bool cuts = true;
  bool use_prefilter = true;
  double integrality_tolerance = 1e-6;
  /// Worker threads for separation. Results are merged in pair order, so
  /// the outcome does not depend on this value.
  unsigned threads = 1;
  /// compare_relaxations: also solve the y-space models (AJ, Lawler, FY).
  bool lifted_relaxations = true;
  FyVariant fy_variant = FyVariant::Standard;
  bool record_timings = false;
  SimplexOptions simplex{};
  std::function<void(const std::string&)> log;
};

using Fixing = std::pair<std::size_t, std::size_t>;

struct BnCNode {
  std::set<Fixing> fixed_zero;
  std::set<Fixing> fixed_one;
  double lp_bound = -std::numeric_limits<double>::infinity();
  std::size_t depth = 0;
  std::size_t id = 0;
};

struct SolveReport {
  std::size_t n = 0;
  /// Relaxation values keyed by linearization short name, plus "xy+cuts".
  std::vector<std::pair<std::string, double>> bounds;
  std::optional<double> root_bound_before;
  std::optional<double> root_bound_after;
  /// Root LP value after each round (first entry: no cuts).
  std::vector<double> root_round_bounds;
  std::vector<AbCut> cuts;
  std::size_t cut_rounds = 0;
  std::size_t farkas_cuts = 0;
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::optional<Permutation> incumbent;
  std::optional<double> incumbent_value;
  std::optional<double> global_bound;
  bool optimal = false;
  bool node_limit_reached = false;
  std::optional<double> optimum;
  std::optional<double> gap_closed;
  FyVariant fy_variant = FyVariant::Standard;
  std::vector<std::pair<std::string, double>> timings;

  std::optional<double> bound(const std::string& key) const {
    for (const auto& [k, v] : bounds)
      if (k == key) return v;
    return std::nullopt;
  }
};

/// Max-weight assignment on x*. Among all maximizers the lexicographically
/// smallest image array is returned: rows are fixed greedily in order, each
/// to the smallest column that still allows the optimum.
inline Permutation round_to_permutation(const DoublyStochasticPoint& x_star) {
  const std::size_t n = x_star.size();
  RealMatrix neg(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) neg(i, j) = -x_star(i, j);
  const double best = -solve_lap(neg).value;

  std::vector<int> image(n, -1);
  std::vector<char> col_used(n, 0);
  double fixed_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (col_used[j]) continue;
      double rest = 0.0;
      const std::size_t m = n - i - 1;
      if (m > 0) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c)
          if (!col_used[c] && c != j) cols.push_back(c);
        RealMatrix sub(m, m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) sub(r, c) = neg(i + 1 + r, cols[c]);
        rest = -solve_lap(sub).value;
      }
      if (fixed_weight + x_star(i, j) + rest >= best - 1e-9) {
        image[i] = static_cast<int>(j);
        col_used[j] = 1;
        fixed_weight += x_star(i, j);
        break;
      }
    }
    if (image[i] < 0) throw StateError("rounding failed to extend the assignment");
  }
  return Permutation(std::move(image));
}

namespace detail {

struct RelaxationPoint {
  RealMatrix x;
  RealMatrix z;
};

inline RelaxationPoint read_point(const LinearizationModel& m, const std::vector<double>& primal) {
  const std::size_t n = m.layout.size();
  RelaxationPoint p{RealMatrix(n, n, 0.0), RealMatrix(n, n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = primal[static_cast<std::size_t>(m.layout.x(i, j))];
      p.x(i, j) = std::clamp(x, 0.0, 1.0);
      if (m.layout.has_z()) p.z(i, j) = primal[static_cast<std::size_t>(m.layout.z(i, j))];
    }
  return p;
}

inline bool is_integral(const RealMatrix& x, double tol) {
  return std::all_of(x.values().begin(), x.values().end(),
                     [tol](double v) { return v <= tol || v >= 1.0 - tol; });
}

inline Permutation integral_permutation(const RealMatrix& x) {
  std::vector<int> image(x.rows(), -1);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) > 0.5) image[i] = static_cast<int>(j);
  return Permutation(std::move(image));
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// The Xia-Yuan model together with every cut added so far.
class CutModel {
 public:
  CutModel(const QapInstance& instance, const BoundTables& bounds)
      : model_(build_xy(instance, bounds)) {}

  const LinearizationModel& model() const noexcept { return model_; }
  const CutPool& pool() const noexcept { return pool_; }

  bool add(const AbCut& cut) {
    if (!pool_.add(cut)) return false;
    add_cut_row(model_, cut,
                "abcut" + detail::idx({cut.a, cut.b}) + "#" + std::to_string(pool_.size()));
    return true;
  }

 private:
  LinearizationModel model_;
  CutPool pool_;
};

/// Runs separate_ab for every pair at (x, z) and adds violated cuts to
/// `target` in pair order. Returns the number of new cuts and counts cuts
/// taken from Farkas rays in `farkas`.
inline std::size_t separation_round(const QapInstance& instance, const BoundTables& bounds,
                                    const RealMatrix& x, const RealMatrix& z,
                                    CutModel& target, const SolveConfig& config,
                                    std::size_t* farkas = nullptr) {
  const std::size_t n = instance.size();
  const DoublyStochasticPoint point(x, 1e-6);
  std::vector<SeparationOutcome> outcomes(n * n);
  std::mutex log_mutex;
  SeparationOptions opt;
  opt.use_prefilter = config.use_prefilter;
  opt.simplex = config.simplex;
  opt.log = [&](const std::string& msg) {
    std::lock_guard lock(log_mutex);
    if (config.log)
      config.log(msg);
    else
      std::clog << "qapcut: " << msg << '\n';
  };
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t p = first; p < n * n; p += stride)
      outcomes[p] = separate_ab(instance, bounds, p / n, p % n, point, z, opt);
  };
  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, n * n);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::size_t added = 0;
  for (auto& o : outcomes)
    if (o.status == SeparationStatus::CutFound && target.add(*o.cut)) {
      ++added;
      if (o.from_farkas && farkas) ++*farkas;
    }
  return added;
}

struct RootCutResult {
  LpSolution solution;
  std::vector<AbCut> cuts;
  /// Rounds that added at least one cut.
  std::size_t rounds = 0;
  /// LP value before any cut, then after each round.
  std::vector<double> bounds;
  std::size_t farkas_cuts = 0;
};

namespace detail {

inline LpSolution solve_or_throw(const LpModel& lp, const SimplexOptions& opt, const char* what) {
  LpSolution s = solve(lp, opt);
  if (!s.optimal())
    throw StateError(std::string(what) + " LP ended with status " + to_string(s.status));
  return s;
}

inline RootCutResult root_loop(const QapInstance& instance, const BoundTables& bounds,
                               CutModel& cm, std::size_t max_rounds, const SolveConfig& config) {
  RootCutResult r;
  r.solution = solve_or_throw(cm.model().lp, config.simplex, "root relaxation");
  r.bounds.push_back(r.solution.objective_value);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const RelaxationPoint pt = read_point(cm.model(), r.solution.primal);
    const std::size_t added =
        separation_round(instance, bounds, pt.x, pt.z, cm, config, &r.farkas_cuts);
    if (added == 0) break;
    ++r.rounds;
    r.solution = solve_or_throw(cm.model().lp, config.simplex, "root relaxation");
    r.bounds.push_back(r.solution.objective_value);
  }
  r.cuts = cm.pool().cuts();
  return r;
}

}  // namespace detail

/// Solve the XY relaxation, separate ab-cuts at the optimum, add them and
/// re-solve, until a round adds no cut or `max_rounds` rounds have run.
inline RootCutResult root_cut_loop(const QapInstance& instance, const BoundTables& bounds,
                                   std::size_t max_rounds = 50, const SolveConfig& config = {}) {
  if (max_rounds < 1) throw ArgumentError("max_rounds must be >= 1");
  CutModel cm(instance, bounds);
  return detail::root_loop(instance, bounds, cm, max_rounds, config);
}

namespace detail {

inline void require_nonnegative(const QapInstance& instance) {
  for (double v : instance.flow().values())
    if (v < 0.0) throw ArgumentError("branch-and-cut requires nonnegative P");
  for (double v : instance.distance().values())
    if (v < 0.0) throw ArgumentError("branch-and-cut requires nonnegative D");
}

struct NodeOrder {
  bool operator()(const BnCNode& a, const BnCNode& b) const {
    if (a.lp_bound != b.lp_bound) return a.lp_bound > b.lp_bound;
    return a.id > b.id;
  }
};

}  // namespace detail

/// Best-bound branch-and-cut on the Xia-Yuan model. Branches on the most
/// fractional x_ij; the one-branch also fixes the rest of row i and
/// column j to zero. Cuts found anywhere are global.
inline SolveReport solve_bnc(const QapInstance& instance, const SolveConfig& config = {}) {
  const std::size_t n = instance.size();
  if (n < 2) throw ArgumentError("branch-and-cut needs n >= 2");
  detail::require_nonnegative(instance);
  const detail::Stopwatch total;

  SolveReport rep;
  rep.n = n;
  rep.fy_variant = config.fy_variant;
  const BoundTables bounds = compute_bounds(instance);
  CutModel cm(instance, bounds);

  const detail::Stopwatch root_clock;
  const RootCutResult root = detail::root_loop(instance, bounds, cm,
                                               config.cuts ? config.root_cut_rounds : 0, config);
  rep.root_bound_before = root.bounds.front();
  rep.root_bound_after = root.bounds.back();
  rep.root_round_bounds = root.bounds;
  rep.cut_rounds = root.rounds;
  rep.farkas_cuts = root.farkas_cuts;
  rep.bounds.emplace_back("xy", root.bounds.front());
  if (config.cuts) rep.bounds.emplace_back("xy+cuts", root.bounds.back());
  const double root_seconds = root_clock.seconds();

  double incumbent = std::numeric_limits<double>::infinity();
  auto offer = [&](const Permutation& p) {
    const double v = evaluate(instance, p);
    if (v < incumbent - kValueTolerance ||
        (std::abs(v - incumbent) <= kValueTolerance && rep.incumbent && p < *rep.incumbent)) {
      incumbent = std::min(incumbent, v);
      rep.incumbent = p;
    }
  };
  offer(round_to_permutation(
      DoublyStochasticPoint(detail::read_point(cm.model(), root.solution.primal).x, 1e-6)));

  std::priority_queue<BnCNode, std::vector<BnCNode>, detail::NodeOrder> open;
  std::size_t next_id = 0;
  open.push(BnCNode{{}, {}, root.solution.objective_value, 0, next_id++});
  const detail::Stopwatch tree_clock;

  while (!open.empty()) {
    if (rep.nodes >= config.node_limit) {
      rep.node_limit_reached = true;
      break;
    }
    BnCNode node = open.top();
    open.pop();
    if (node.lp_bound >= incumbent - 1e-9) continue;
    ++rep.nodes;
    rep.max_depth = std::max(rep.max_depth, node.depth);

    std::vector<std::pair<int, double>> fixes;
    for (const auto& [i, j] : node.fixed_zero) fixes.emplace_back(cm.model().layout.x(i, j), 0.0);
    for (const auto& [i, j] : node.fixed_one) fixes.emplace_back(cm.model().layout.x(i, j), 1.0);

    LpSolution sol;
    for (std::size_t round = 0;; ++round) {
      sol = solve(fix_variables(cm.model().lp, fixes), config.simplex);
      if (!sol.optimal() || !config.cuts || round >= config.node_cut_rounds) break;
      if (sol.objective_value >= incumbent - 1e-9) break;
      const detail::RelaxationPoint pt = detail::read_point(cm.model(), sol.primal);
      if (detail::is_integral(pt.x, config.integrality_tolerance)) break;
      if (separation_round(instance, bounds, pt.x, pt.z, cm, config, &rep.farkas_cuts) == 0) break;
    }
    if (sol.status == LpStatus::Infeasible) continue;
    if (!sol.optimal())
      throw StateError(std::string("node LP ended with status ") + to_string(sol.status));
    const double lp_bound = std::max(sol.objective_value, node.lp_bound);
    if (lp_bound >= incumbent - 1e-9) continue;

    const detail::RelaxationPoint pt = detail::read_point(cm.model(), sol.primal);
    if (detail::is_integral(pt.x, config.integrality_tolerance)) {
      offer(detail::integral_permutation(pt.x));
      continue;
    }
    offer(round_to_permutation(DoublyStochasticPoint(pt.x, 1e-6)));
    if (lp_bound >= incumbent - 1e-9) continue;

    // Most fractional x_ij; the first in row-major order wins ties.
    std::size_t bi = 0, bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double f = std::min(pt.x(i, j), 1.0 - pt.x(i, j));
        if (f > best + 1e-12) {
          best = f;
          bi = i;
          bj = j;
        }
      }
    BnCNode zero{node.fixed_zero, node.fixed_one, lp_bound, node.depth + 1, next_id++};
    zero.fixed_zero.insert({bi, bj});
    BnCNode one{node.fixed_zero, node.fixed_one, lp_bound, node.depth + 1, next_id++};
    one.fixed_one.insert({bi, bj});
    for (std::size_t k = 0; k < n; ++k) {
      if (k != bj) one.fixed_zero.insert({bi, k});
      if (k != bi) one.fixed_zero.insert({k, bj});
    }
    open.push(std::move(zero));
    open.push(std::move(one));
  }

  rep.cuts = cm.pool().cuts();
  rep.incumbent_value = incumbent;
  double bound = incumbent;
  if (rep.node_limit_reached)
    while (!open.empty()) {
      bound = std::min(bound, open.top().lp_bound);
      open.pop();
    }
  rep.global_bound = bound;
  rep.optimal = !rep.node_limit_reached;
  if (rep.optimal) rep.optimum = incumbent;
  if (config.record_timings) {
    rep.timings.emplace_back("root_seconds", root_seconds);
    rep.timings.emplace_back("tree_seconds", tree_clock.seconds());
    rep.timings.emplace_back("total_seconds", total.seconds());
  }
  return rep;
}

inline constexpr std::size_t kCompareMaxSize = 6;

/// (after - before) / (optimum - before), or nothing when the denominator
/// vanishes.
inline std::optional<double> gap_closed(double before, double after, double optimum) {
  const double gap = optimum - before;
  if (gap <= 1e-9) return std::nullopt;
  return (after - before) / gap;
}

/// Solves every linearization's relaxation, plus XY with root ab-cuts, and
/// reports the bounds and the gap closed by the cuts against the
/// brute-force optimum.
inline SolveReport compare_relaxations(const QapInstance& instance, const SolveConfig& config = {}) {
  const std::size_t n = instance.size();
  if (n < 2) throw ArgumentError("relaxation comparison needs n >= 2");
  if (config.lifted_relaxations && n > kCompareMaxSize)
    throw CapacityError("relaxation comparison with y-space models limited to n <= " +
                        std::to_string(kCompareMaxSize) + ", got n = " + std::to_string(n));
  const detail::Stopwatch total;
  SolveReport rep;
  rep.n = n;
  rep.fy_variant = config.fy_variant;
  const BoundTables bounds = compute_bounds(instance);
  for (LinearizationKind kind : kAllLinearizations) {
    if (uses_y(kind) && !config.lifted_relaxations) continue;
    const LinearizationModel m = build_linearization(kind, instance, &bounds, config.fy_variant);
    const LpSolution s = detail::solve_or_throw(m.lp, config.simplex, short_name(kind));
    rep.bounds.emplace_back(short_name(kind), s.objective_value);
  }
  const RootCutResult root = root_cut_loop(instance, bounds, std::max<std::size_t>(1, config.root_cut_rounds), config);
  rep.bounds.emplace_back("xy+cuts", root.bounds.back());
  rep.root_bound_before = root.bounds.front();
  rep.root_bound_after = root.bounds.back();
  rep.root_round_bounds = root.bounds;
  rep.cuts = root.cuts;
  rep.cut_rounds = root.rounds;
  rep.farkas_cuts = root.farkas_cuts;
  if (n <= kBruteForceMaxSize) {
    const BruteForceResult bf = brute_force_optimum(instance);
    rep.optimum = bf.value;
    rep.incumbent = bf.perm;
    rep.incumbent_value = bf.value;
    rep.gap_closed = gap_closed(root.bounds.front(), root.bounds.back(), bf.value);
  }
  if (config.record_timings) rep.timings.emplace_back("total_seconds", total.seconds());
  return rep;
}

}  // namespace qapcut

#endif  // QAPCUT_BNC_HPP_
