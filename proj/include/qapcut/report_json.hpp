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

// JSON views of instances, cuts and solve reports. Indices are 1-based in
// every document, matching the text output and the LP row names.
//
// Report schema:
//   {
//     "n": int,
//     "fy_variant": "standard" | "as-printed",
//     "bounds": { "<linearization>": number, ..., "xy+cuts": number },
//     "root": { "bound_before": number|null, "bound_after": number|null,
//               "round_bounds": [number], "rounds": int, "farkas_cuts": int },
//     "cuts": [ { "a", "b", "coef_ab", "delta": [[k, l, value]], "dual_objective" } ],
//     "tree": { "nodes": int, "depth": int, "node_limit_reached": bool },
//     "incumbent": { "perm": [int] | null, "value": number|null },
//     "global_bound": number|null, "optimal": bool,
//     "optimum": number|null, "gap_closed": number|null,
//     "timings": { "<phase>_seconds": number }
//   }

#ifndef QAPCUT_REPORT_JSON_HPP_
#define QAPCUT_REPORT_JSON_HPP_

#include <cmath>
#include <optional>
#include <string>

#include "json.hpp"
#include "qapcut/bnc.hpp"
#include "qapcut/cuts.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/matrix.hpp"

namespace qapcut {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json number_or_null(const std::optional<double>& v) {
  return v ? number_or_null(*v) : Json(nullptr);
}

inline Json row_major(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline Json to_json(const QapInstance& instance) {
  Json j;
  j["n"] = instance.size();
  j["P"] = detail::row_major(instance.flow());
  j["D"] = detail::row_major(instance.distance());
  j["C"] = detail::row_major(instance.linear());
  return j;
}

/// Zero delta entries are omitted.
inline Json to_json(const AbCut& cut) {
  Json j;
  j["a"] = cut.a + 1;
  j["b"] = cut.b + 1;
  j["coef_ab"] = cut.coef_ab;
  Json delta = Json::array();
  for (std::size_t k = 0; k < cut.size(); ++k)
    for (std::size_t l = 0; l < cut.size(); ++l) {
      const double d = cut.delta_at(k, l);
      if (d != 0.0) delta.push_back(Json::array({k + 1, l + 1, d}));
    }
  j["delta"] = std::move(delta);
  j["dual_objective"] = detail::number_or_null(cut.dual_objective);
  return j;
}

inline Json to_json(const SolveReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["fy_variant"] = to_string(rep.fy_variant);

  Json bounds = Json::object();
  for (const auto& [key, value] : rep.bounds) bounds[key] = detail::number_or_null(value);
  j["bounds"] = std::move(bounds);

  Json root;
  root["bound_before"] = detail::number_or_null(rep.root_bound_before);
  root["bound_after"] = detail::number_or_null(rep.root_bound_after);
  Json rounds = Json::array();
  for (double b : rep.root_round_bounds) rounds.push_back(detail::number_or_null(b));
  root["round_bounds"] = std::move(rounds);
  root["rounds"] = rep.cut_rounds;
  root["farkas_cuts"] = rep.farkas_cuts;
  j["root"] = std::move(root);

  Json cuts = Json::array();
  for (const AbCut& c : rep.cuts) cuts.push_back(to_json(c));
  j["cuts"] = std::move(cuts);

  j["tree"] = {{"nodes", rep.nodes},
               {"depth", rep.max_depth},
               {"node_limit_reached", rep.node_limit_reached}};

  Json inc;
  inc["perm"] = rep.incumbent ? Json(rep.incumbent->one_based()) : Json(nullptr);
  inc["value"] = detail::number_or_null(rep.incumbent_value);
  j["incumbent"] = std::move(inc);

  j["global_bound"] = detail::number_or_null(rep.global_bound);
  j["optimal"] = rep.optimal;
  j["optimum"] = detail::number_or_null(rep.optimum);
  j["gap_closed"] = detail::number_or_null(rep.gap_closed);

  Json timings = Json::object();
  for (const auto& [key, value] : rep.timings) timings[key] = value;
  j["timings"] = std::move(timings);
  return j;
}

}  // namespace qapcut

#endif  // QAPCUT_REPORT_JSON_HPP_
