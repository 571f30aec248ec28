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

// MILP linearizations of the QAP as LpModels.
//
// Variables: x(i,j) assignment, z(i,j) = x_ij * sum_{k!=i,l!=j} p_ik d_jl x_kl
// (Xia-Yuan / Kaufman-Broeckx), y(i,j,k,l) = x_ij x_kl for i != k, j != l
// (Adams-Johnson, Lawler, Frieze-Yadegar). Names and row labels are 1-based.

#ifndef QAPCUT_LINEARIZATIONS_HPP_
#define QAPCUT_LINEARIZATIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/lap.hpp"
#include "qapcut/lp.hpp"
#include "qapcut/matrix.hpp"

namespace qapcut {

enum class LinearizationKind {
  XiaYuan,
  AdamsJohnson,
  Lawler,
  FriezeYadegarAggregate,
  FriezeYadegar,
  KaufmanBroeckx,
};

inline constexpr LinearizationKind kAllLinearizations[] = {
    LinearizationKind::XiaYuan,       LinearizationKind::AdamsJohnson,
    LinearizationKind::Lawler,        LinearizationKind::FriezeYadegarAggregate,
    LinearizationKind::FriezeYadegar, LinearizationKind::KaufmanBroeckx,
};

/// Short name used on the command line and as JSON key.
inline const char* short_name(LinearizationKind k) {
  switch (k) {
    case LinearizationKind::XiaYuan: return "xy";
    case LinearizationKind::AdamsJohnson: return "aj";
    case LinearizationKind::Lawler: return "lawler";
    case LinearizationKind::FriezeYadegarAggregate: return "fy-aggregate";
    case LinearizationKind::FriezeYadegar: return "fy";
    case LinearizationKind::KaufmanBroeckx: return "kb";
  }
  return "?";
}

inline std::optional<LinearizationKind> parse_linearization(std::string_view s) {
  for (LinearizationKind k : kAllLinearizations)
    if (s == short_name(k)) return k;
  return std::nullopt;
}

inline bool uses_y(LinearizationKind k) {
  return k != LinearizationKind::XiaYuan && k != LinearizationKind::KaufmanBroeckx;
}

/// Right-hand side used by the third and fourth constraint families of the
/// four-family Frieze-Yadegar system. `Standard` uses x_ij. `AsPrinted`
/// reads the x_kl of the commonly printed form as summed over the same
/// index as the left-hand side, which is not valid for every assignment;
/// it is kept only to make the difference measurable.
enum class FyVariant { Standard, AsPrinted };

inline const char* to_string(FyVariant v) {
  return v == FyVariant::Standard ? "standard" : "as-printed";
}

/// Position of each x, z and y variable inside a built model (-1 if absent).
class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(std::size_t n)
      : n_(n), x_(n * n, -1), z_(n * n, -1), y_(n * n * n * n, -1) {}

  std::size_t size() const noexcept { return n_; }
  int x(std::size_t i, std::size_t j) const { return x_[i * n_ + j]; }
  int z(std::size_t i, std::size_t j) const { return z_[i * n_ + j]; }
  int y(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return y_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  bool has_z() const { return n_ > 0 && z_[0] >= 0; }
  bool has_y() const { return n_ > 1 && y(0, 0, 1, 1) >= 0; }

  void set_x(std::size_t i, std::size_t j, int v) { x_[i * n_ + j] = v; }
  void set_z(std::size_t i, std::size_t j, int v) { z_[i * n_ + j] = v; }
  void set_y(std::size_t i, std::size_t j, std::size_t k, std::size_t l, int v) {
    y_[((i * n_ + j) * n_ + k) * n_ + l] = v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<int> x_, z_, y_;
};

struct LinearizationModel {
  LinearizationKind kind = LinearizationKind::XiaYuan;
  LpModel lp;
  VariableLayout layout;
  FyVariant fy_variant = FyVariant::Standard;
};

namespace detail {

inline std::string idx(std::initializer_list<std::size_t> v) {
  std::string s = "[";
  bool first = true;
  for (std::size_t x : v) {
    if (!first) s += ',';
    s += std::to_string(x + 1);
    first = false;
  }
  return s + "]";
}

inline void require_size(const QapInstance& instance) {
  if (instance.size() < 2) throw ArgumentError("linearizations need n >= 2");
}

inline void add_x(LinearizationModel& m, const QapInstance& inst) {
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.layout.set_x(i, j, m.lp.add_variable("x" + idx({i, j}), 0.0, 1.0, true, inst.c(i, j)));
}

inline void add_assignment_rows(LinearizationModel& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({m.layout.x(i, j), 1.0});
    m.lp.add_constraint("assign_row" + idx({i}), std::move(t), Relation::Equal, 1.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({m.layout.x(i, j), 1.0});
    m.lp.add_constraint("assign_col" + idx({j}), std::move(t), Relation::Equal, 1.0);
  }
}

// y(i,j,k,l) for i != k, j != l, objective p_ik d_jl.
inline void add_y(LinearizationModel& m, const QapInstance& inst, double upper) {
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          m.layout.set_y(i, j, k, l,
                         m.lp.add_variable("y" + idx({i, j, k, l}), 0.0, upper, false,
                                           inst.p(i, k) * inst.d(j, l)));
        }
      }
}

// Sum over i != k of y(i,j,k,l) == x(k,l), for j != l  (family over i)
// and sum over j != l of y(i,j,k,l) == x(k,l), for i != k (family over j).
inline void add_aj_sum_rows(LinearizationModel& m, std::size_t n, const char* tag_i,
                            const char* tag_j) {
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j) continue;
        std::vector<Term> t;
        for (std::size_t i = 0; i < n; ++i)
          if (i != k) t.push_back({m.layout.y(i, j, k, l), 1.0});
        t.push_back({m.layout.x(k, l), -1.0});
        m.lp.add_constraint(tag_i + idx({j, k, l}), std::move(t), Relation::Equal, 0.0);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < n; ++j)
          if (j != l) t.push_back({m.layout.y(i, j, k, l), 1.0});
        t.push_back({m.layout.x(k, l), -1.0});
        m.lp.add_constraint(tag_j + idx({i, k, l}), std::move(t), Relation::Equal, 0.0);
      }
    }
}

inline void build_xy_core(LinearizationModel& m, const QapInstance& inst,
                          const BoundTables& bounds, bool with_l_rows) {
  const std::size_t n = inst.size();
  if (bounds.size() != n)
    throw ArgumentError("bound tables are for n = " + std::to_string(bounds.size()) +
                        ", instance has n = " + std::to_string(n));
  m.layout = VariableLayout(n);
  add_x(m, inst);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.layout.set_z(i, j, m.lp.add_variable("z" + idx({i, j}), std::min(0.0, bounds.l(i, j)),
                                             kInfinity, false, 1.0));
  add_assignment_rows(m, n);
  if (with_l_rows) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.lp.add_constraint("xy15" + idx({i, j}),
                            {{m.layout.z(i, j), 1.0}, {m.layout.x(i, j), -bounds.l(i, j)}},
                            Relation::GreaterEqual, 0.0);
  }
  // z_ij - u_ij x_ij - sum p_ik d_jl x_kl >= -u_ij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> t{{m.layout.z(i, j), 1.0}, {m.layout.x(i, j), -bounds.u(i, j)}};
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l)
          if (l != j) t.push_back({m.layout.x(k, l), -inst.p(i, k) * inst.d(j, l)});
      }
      m.lp.add_constraint("xy16" + idx({i, j}), std::move(t), Relation::GreaterEqual,
                          -bounds.u(i, j));
    }
}

}  // namespace detail

/// Xia-Yuan: n^2 x, n^2 z, 2n assignment rows, the l-rows z >= l x and the
/// u-rows z >= sum p d x + u (x - 1). z is bounded below by min(0, l_ij).
inline LinearizationModel build_xy(const QapInstance& instance, const BoundTables& bounds) {
  detail::require_size(instance);
  LinearizationModel m{LinearizationKind::XiaYuan, LpModel(Sense::Minimize), {}, {}};
  detail::build_xy_core(m, instance, bounds, true);
  return m;
}

/// Kaufman-Broeckx: Xia-Yuan without the l-rows.
inline LinearizationModel build_kaufman_broeckx(const QapInstance& instance,
                                                const BoundTables& bounds) {
  detail::require_size(instance);
  LinearizationModel m{LinearizationKind::KaufmanBroeckx, LpModel(Sense::Minimize), {}, {}};
  detail::build_xy_core(m, instance, bounds, false);
  return m;
}

/// Adams-Johnson: y >= 0, the two sum families, symmetry y_ijkl = y_klij
/// (one row per unordered pair) and assignment rows.
inline LinearizationModel build_aj(const QapInstance& instance) {
  detail::require_size(instance);
  const std::size_t n = instance.size();
  LinearizationModel m{LinearizationKind::AdamsJohnson, LpModel(Sense::Minimize),
                       VariableLayout(n), {}};
  detail::add_x(m, instance);
  detail::add_y(m, instance, kInfinity);
  detail::add_aj_sum_rows(m, n, "aj7", "aj8");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          // Emit once per unordered pair {(i,j),(k,l)}.
          if (i * n + j > k * n + l) continue;
          m.lp.add_constraint("aj9" + detail::idx({i, j, k, l}),
                              {{m.layout.y(i, j, k, l), 1.0}, {m.layout.y(k, l, i, j), -1.0}},
                              Relation::Equal, 0.0);
        }
      }
  detail::add_assignment_rows(m, n);
  return m;
}

/// Lawler: 0 <= y <= 1, one total-count row, x_ij + x_kl - 2 y_ijkl >= 0.
/// Only i != k, j != l products are modelled, so an assignment has
/// n(n-1) of them and that is the count used.
inline LinearizationModel build_lawler(const QapInstance& instance) {
  detail::require_size(instance);
  const std::size_t n = instance.size();
  LinearizationModel m{LinearizationKind::Lawler, LpModel(Sense::Minimize), VariableLayout(n), {}};
  detail::add_x(m, instance);
  detail::add_y(m, instance, 1.0);
  std::vector<Term> all;
  for (std::size_t j = 0; j < m.lp.num_variables(); ++j)
    if (j >= n * n) all.push_back({static_cast<int>(j), 1.0});
  m.lp.add_constraint("law_count", std::move(all), Relation::Equal,
                      static_cast<double>(n * (n - 1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          m.lp.add_constraint("law_link" + detail::idx({i, j, k, l}),
                              {{m.layout.x(i, j), 1.0},
                               {m.layout.x(k, l), 1.0},
                               {m.layout.y(i, j, k, l), -2.0}},
                              Relation::GreaterEqual, 0.0);
        }
      }
  detail::add_assignment_rows(m, n);
  return m;
}

/// Aggregated Frieze-Yadegar: 0 <= y <= 1 and, per (k,l) and per (i,j),
/// one aggregated sum row with right-hand side (n-1) x.
inline LinearizationModel build_fy_aggregate(const QapInstance& instance) {
  detail::require_size(instance);
  const std::size_t n = instance.size();
  LinearizationModel m{LinearizationKind::FriezeYadegarAggregate, LpModel(Sense::Minimize),
                       VariableLayout(n), {}};
  detail::add_x(m, instance);
  detail::add_y(m, instance, 1.0);
  const double rhs = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<Term> t;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != k && j != l) t.push_back({m.layout.y(i, j, k, l), 1.0});
      t.push_back({m.layout.x(k, l), -rhs});
      m.lp.add_constraint("fya_kl" + detail::idx({k, l}), std::move(t), Relation::Equal, 0.0);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> t;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (i != k && j != l) t.push_back({m.layout.y(i, j, k, l), 1.0});
      t.push_back({m.layout.x(i, j), -rhs});
      m.lp.add_constraint("fya_ij" + detail::idx({i, j}), std::move(t), Relation::Equal, 0.0);
    }
  detail::add_assignment_rows(m, n);
  return m;
}

/// Four-family Frieze-Yadegar: 0 <= y <= 1, the two Adams-Johnson sum
/// families and the two sum families over k and over l.
inline LinearizationModel build_fy(const QapInstance& instance,
                                   FyVariant variant = FyVariant::Standard) {
  detail::require_size(instance);
  const std::size_t n = instance.size();
  LinearizationModel m{LinearizationKind::FriezeYadegar, LpModel(Sense::Minimize),
                       VariableLayout(n), variant};
  detail::add_x(m, instance);
  detail::add_y(m, instance, 1.0);
  detail::add_aj_sum_rows(m, n, "fy1", "fy2");
  // Family 3: for i, j, l with l != j, sum over k != i of y(i,j,k,l).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j) continue;
        std::vector<Term> t;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i) {
            t.push_back({m.layout.y(i, j, k, l), 1.0});
            if (variant == FyVariant::AsPrinted) t.push_back({m.layout.x(k, l), -1.0});
          }
        if (variant == FyVariant::Standard) t.push_back({m.layout.x(i, j), -1.0});
        m.lp.add_constraint("fy3" + detail::idx({i, j, l}), std::move(t), Relation::Equal, 0.0);
      }
  // Family 4: for i, j, k with k != i, sum over l != j of y(i,j,k,l).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        std::vector<Term> t;
        for (std::size_t l = 0; l < n; ++l)
          if (l != j) {
            t.push_back({m.layout.y(i, j, k, l), 1.0});
            if (variant == FyVariant::AsPrinted) t.push_back({m.layout.x(k, l), -1.0});
          }
        if (variant == FyVariant::Standard) t.push_back({m.layout.x(i, j), -1.0});
        m.lp.add_constraint("fy4" + detail::idx({i, j, k}), std::move(t), Relation::Equal, 0.0);
      }
  detail::add_assignment_rows(m, n);
  return m;
}

/// Builds any linearization. `bounds` is required for XY and KB only.
inline LinearizationModel build_linearization(LinearizationKind kind, const QapInstance& instance,
                                              const BoundTables* bounds,
                                              FyVariant fy_variant = FyVariant::Standard) {
  auto need = [&]() -> const BoundTables& {
    if (!bounds) throw ArgumentError("bound tables required for this linearization");
    return *bounds;
  };
  switch (kind) {
    case LinearizationKind::XiaYuan: return build_xy(instance, need());
    case LinearizationKind::KaufmanBroeckx: return build_kaufman_broeckx(instance, need());
    case LinearizationKind::AdamsJohnson: return build_aj(instance);
    case LinearizationKind::Lawler: return build_lawler(instance);
    case LinearizationKind::FriezeYadegarAggregate: return build_fy_aggregate(instance);
    case LinearizationKind::FriezeYadegar: return build_fy(instance, fy_variant);
  }
  throw ArgumentError("unknown linearization");
}

/// Values y_ijkl for i != k, j != l. Unset entries are NaN.
class YValues {
 public:
  explicit YValues(std::size_t n)
      : n_(n), v_(n * n * n * n, std::numeric_limits<double>::quiet_NaN()) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return v_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double value) {
    if (i == k || j == l) throw ArgumentError("y requires i != k and j != l");
    v_[((i * n_ + j) * n_ + k) * n_ + l] = value;
  }

  /// Reads the y part of a primal vector laid out by `layout`.
  static YValues from_primal(const VariableLayout& layout, const std::vector<double>& primal) {
    const std::size_t n = layout.size();
    YValues y(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            if (i != k && j != l)
              y.set(i, j, k, l, primal.at(static_cast<std::size_t>(layout.y(i, j, k, l))));
    return y;
  }

 private:
  std::size_t n_;
  std::vector<double> v_;
};

/// z_ij = sum_{k != i, l != j} p_ik d_jl y_ijkl.
inline RealMatrix project_y_to_z(const QapInstance& instance, const YValues& y) {
  const std::size_t n = instance.size();
  if (y.size() != n) throw ArgumentError("y size does not match instance");
  RealMatrix z(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == j) continue;
          const double v = y(i, j, k, l);
          if (std::isnan(v))
            throw ArgumentError("missing y" + detail::idx({i, j, k, l}));
          z(i, j) += instance.p(i, k) * instance.d(j, l) * v;
        }
      }
  return z;
}

/// z induced by an assignment: z_ij = x_ij * sum_{k!=i,l!=j} p_ik d_jl x_kl.
inline RealMatrix induced_z(const QapInstance& instance, const Permutation& perm) {
  const std::size_t n = instance.size();
  RealMatrix z(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) z(i, j) += instance.p(i, k) * instance.d(j, static_cast<std::size_t>(perm[k]));
  }
  return z;
}

/// Full primal vector of `model` at the assignment `perm`: x the permutation
/// matrix, z induced, y the outer product.
inline std::vector<double> permutation_point(const LinearizationModel& model,
                                             const QapInstance& instance,
                                             const Permutation& perm) {
  const std::size_t n = instance.size();
  std::vector<double> v(model.lp.num_variables(), 0.0);
  const RealMatrix z = induced_z(instance, perm);
  auto on = [&](std::size_t i, std::size_t j) { return perm[i] == static_cast<int>(j); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      v[static_cast<std::size_t>(model.layout.x(i, j))] = on(i, j) ? 1.0 : 0.0;
      if (model.layout.has_z()) v[static_cast<std::size_t>(model.layout.z(i, j))] = z(i, j);
      if (!model.layout.has_y()) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (i != k && j != l)
            v[static_cast<std::size_t>(model.layout.y(i, j, k, l))] =
                on(i, j) && on(k, l) ? 1.0 : 0.0;
    }
  return v;
}

}  // namespace qapcut

#endif  // QAPCUT_LINEARIZATIONS_HPP_
