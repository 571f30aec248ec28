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

// The `qap` command line driver. `run` is the whole program; tools/qap.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 capacity guard,
// 4 any other failure.

#ifndef QAPCUT_CLI_HPP_
#define QAPCUT_CLI_HPP_

#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qapcut/bnc.hpp"
#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/lap.hpp"
#include "qapcut/linearizations.hpp"
#include "qapcut/lp.hpp"
#include "qapcut/lp_format.hpp"
#include "qapcut/report_json.hpp"

namespace qapcut::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kCapacity = 3, kFailure = 4 };

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::string lin = "xy";
  std::string cuts = "on";
  std::size_t max_rounds = 50;
  std::size_t node_limit = 1'000'000;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool swap_matrices = false;
  std::string fy_variant = "standard";
  bool timings = false;
  bool verbose = false;
};

namespace detail {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// A path, or `random:N` for a seeded uniform instance of size N.
inline QapInstance load_instance(const CliConfig& cfg) {
  const MatrixOrder order = cfg.swap_matrices ? MatrixOrder::DistanceFirst : MatrixOrder::FlowFirst;
  constexpr std::string_view kRandom = "random:";
  if (cfg.input.rfind(kRandom, 0) == 0) {
    const std::string digits = cfg.input.substr(kRandom.size());
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw InputError("bad random instance spec '" + cfg.input + "', expected random:N");
    }
    if (n == 0) throw DomainError("random instance size must be positive");
    QapInstance inst = random_instance(n, cfg.seed);
    if (cfg.swap_matrices) return QapInstance(inst.distance(), inst.flow(), inst.linear());
    return inst;
  }
  std::ifstream in(cfg.input);
  if (!in) throw InputError("cannot open '" + cfg.input + "'");
  return parse_qaplib(in, order);
}

inline SolveConfig solve_config(const CliConfig& cfg, std::ostream& err) {
  SolveConfig c;
  c.node_limit = cfg.node_limit;
  c.root_cut_rounds = cfg.max_rounds;
  c.cuts = cfg.cuts == "on";
  c.threads = cfg.threads;
  c.fy_variant = cfg.fy_variant == "as-printed" ? FyVariant::AsPrinted : FyVariant::Standard;
  c.record_timings = cfg.timings;
  if (cfg.verbose) c.log = [&err](const std::string& msg) { err << "qap: " << msg << '\n'; };
  return c;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline std::string text_report(const SolveReport& rep) {
  std::ostringstream s;
  s << "n " << rep.n << '\n';
  for (const auto& [key, value] : rep.bounds) s << "bound " << key << ' ' << fmt(value) << '\n';
  if (rep.root_bound_before)
    s << "root " << fmt(*rep.root_bound_before) << " -> " << fmt(rep.root_bound_after.value_or(0.0))
      << " (" << rep.cuts.size() << " cuts, " << rep.cut_rounds << " rounds)\n";
  if (rep.nodes) s << "nodes " << rep.nodes << " depth " << rep.max_depth << '\n';
  if (rep.incumbent) {
    s << "incumbent";
    for (int v : rep.incumbent->one_based()) s << ' ' << v;
    s << " value " << fmt(rep.incumbent_value.value_or(0.0)) << '\n';
  }
  if (rep.nodes) s << (rep.optimal ? "status optimal\n" : "status node limit reached\n");
  if (rep.gap_closed) s << "gap_closed " << fmt(*rep.gap_closed) << '\n';
  for (const auto& [key, value] : rep.timings) s << key << ' ' << fmt(value) << '\n';
  return s.str();
}

inline std::string render(const SolveReport& rep, const std::string& format) {
  if (format == "text") return text_report(rep);
  return to_json(rep).dump(2) + "\n";
}

inline void require_format(const CliConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw UsageError("--format " + cfg.format + " is not available for '" + cfg.subcommand + "'");
}

inline LinearizationKind linearization(const CliConfig& cfg) {
  return *parse_linearization(cfg.lin);
}

inline std::string cmd_parse(const CliConfig& cfg) {
  require_format(cfg, {"json", "text"});
  const QapInstance inst = load_instance(cfg);
  if (cfg.format == "text") return serialize_qaplib(inst);
  return to_json(inst).dump(2) + "\n";
}

inline std::string cmd_build(const CliConfig& cfg, std::ostream& err) {
  const QapInstance inst = load_instance(cfg);
  const LinearizationKind kind = linearization(cfg);
  const SolveConfig sc = solve_config(cfg, err);
  const BoundTables bounds = compute_bounds(inst);
  const LinearizationModel m = build_linearization(kind, inst, &bounds, sc.fy_variant);
  if (cfg.format == "lp")
    return write_lp(m.lp, std::string(short_name(kind)) + " linearization, n = " +
                              std::to_string(inst.size()));
  if (cfg.format == "text") {
    std::ostringstream s;
    s << short_name(kind) << " n " << inst.size() << " variables " << m.lp.num_variables()
      << " constraints " << m.lp.num_constraints() << '\n';
    return s.str();
  }
  Json j;
  j["linearization"] = short_name(kind);
  j["n"] = inst.size();
  j["fy_variant"] = to_string(m.fy_variant);
  j["variables"] = m.lp.num_variables();
  j["constraints"] = m.lp.num_constraints();
  return j.dump(2) + "\n";
}

inline std::string cmd_relax(const CliConfig& cfg, std::ostream& err) {
  require_format(cfg, {"json", "text"});
  const QapInstance inst = load_instance(cfg);
  const LinearizationKind kind = linearization(cfg);
  const SolveConfig sc = solve_config(cfg, err);
  const ::qapcut::detail::Stopwatch clock;
  const BoundTables bounds = compute_bounds(inst);
  const LinearizationModel m = build_linearization(kind, inst, &bounds, sc.fy_variant);
  const LpSolution s = ::qapcut::detail::solve_or_throw(m.lp, sc.simplex, short_name(kind));
  SolveReport rep;
  rep.n = inst.size();
  rep.fy_variant = m.fy_variant;
  rep.bounds.emplace_back(short_name(kind), s.objective_value);
  if (kind == LinearizationKind::XiaYuan && sc.cuts) {
    const RootCutResult root = root_cut_loop(inst, bounds, std::max<std::size_t>(1, cfg.max_rounds), sc);
    rep.bounds.emplace_back("xy+cuts", root.bounds.back());
    rep.root_bound_before = root.bounds.front();
    rep.root_bound_after = root.bounds.back();
    rep.root_round_bounds = root.bounds;
    rep.cut_rounds = root.rounds;
    rep.farkas_cuts = root.farkas_cuts;
    rep.cuts = root.cuts;
  }
  if (cfg.timings) rep.timings.emplace_back("total_seconds", clock.seconds());
  return render(rep, cfg.format);
}

inline std::string cmd_cuts(const CliConfig& cfg, std::ostream& err) {
  require_format(cfg, {"json", "text"});
  const QapInstance inst = load_instance(cfg);
  const SolveConfig sc = solve_config(cfg, err);
  const ::qapcut::detail::Stopwatch clock;
  const BoundTables bounds = compute_bounds(inst);
  const RootCutResult root = root_cut_loop(inst, bounds, std::max<std::size_t>(1, cfg.max_rounds), sc);
  SolveReport rep;
  rep.n = inst.size();
  rep.bounds.emplace_back("xy", root.bounds.front());
  rep.bounds.emplace_back("xy+cuts", root.bounds.back());
  rep.root_bound_before = root.bounds.front();
  rep.root_bound_after = root.bounds.back();
  rep.root_round_bounds = root.bounds;
  rep.cut_rounds = root.rounds;
  rep.farkas_cuts = root.farkas_cuts;
  rep.cuts = root.cuts;
  if (cfg.timings) rep.timings.emplace_back("total_seconds", clock.seconds());
  return render(rep, cfg.format);
}

inline std::string cmd_compare(const CliConfig& cfg, std::ostream& err) {
  require_format(cfg, {"json", "text"});
  const QapInstance inst = load_instance(cfg);
  return render(compare_relaxations(inst, solve_config(cfg, err)), cfg.format);
}

inline std::string cmd_solve(const CliConfig& cfg, std::ostream& err) {
  require_format(cfg, {"json", "text"});
  const QapInstance inst = load_instance(cfg);
  return render(solve_bnc(inst, solve_config(cfg, err)), cfg.format);
}

inline void add_common(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("input", cfg.input, "QAPLIB file, or random:N")->required();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "lp"}));
  sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
  sub->add_option("--seed", cfg.seed, "Seed for random:N inputs");
  sub->add_flag("--swap-matrices", cfg.swap_matrices, "Read D before P");
  sub->add_option("--fy-variant", cfg.fy_variant, "Four-family Frieze-Yadegar rows")
      ->check(CLI::IsMember({"standard", "as-printed"}));
  sub->add_flag("--timings", cfg.timings, "Record wall-clock timings in the report");
  sub->add_flag("-v,--verbose", cfg.verbose, "Log solver events to stderr");
}

inline void add_solver(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--cuts", cfg.cuts, "Separate ab-cuts")->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--max-rounds", cfg.max_rounds, "Root cut rounds")->check(CLI::PositiveNumber);
  sub->add_option("--node-limit", cfg.node_limit, "Branch-and-cut node limit")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", cfg.threads, "Separation worker threads")
      ->check(CLI::Range(1u, 256u));
}

inline void add_lin(CLI::App* sub, CliConfig& cfg) {
  std::vector<std::string> names;
  for (LinearizationKind k : kAllLinearizations) names.emplace_back(short_name(k));
  sub->add_option("--lin", cfg.lin, "Linearization")->check(CLI::IsMember(names));
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Quadratic assignment linearizations, ab-cuts and branch-and-cut", "qap"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    bool lin;
  };
  const Sub subs[] = {
      {"parse", "Read an instance and print it", false},
      {"build", "Build a linearization model", true},
      {"relax", "Solve a linearization's LP relaxation", true},
      {"cuts", "Run the root ab-cut loop on the XY relaxation", false},
      {"compare", "Compare all relaxations and the cut bound", false},
      {"solve", "Branch-and-cut to optimality", false},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    detail::add_common(sub, cfg);
    detail::add_solver(sub, cfg);
    if (s.lin) detail::add_lin(sub, cfg);
    sub->callback([&cfg, name = s.name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::string doc;
    if (cfg.subcommand == "build") {
      doc = detail::cmd_build(cfg, err);
    } else if (cfg.subcommand == "parse") {
      doc = detail::cmd_parse(cfg);
    } else if (cfg.subcommand == "relax") {
      doc = detail::cmd_relax(cfg, err);
    } else if (cfg.subcommand == "cuts") {
      doc = detail::cmd_cuts(cfg, err);
    } else if (cfg.subcommand == "compare") {
      doc = detail::cmd_compare(cfg, err);
    } else {
      doc = detail::cmd_solve(cfg, err);
    }
    if (cfg.out.empty()) {
      out << doc;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "qap: cannot write '" << cfg.out << "'\n";
        return kFailure;
      }
      f << doc;
    }
    return kOk;
  } catch (const detail::UsageError& e) {
    err << "qap: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "qap: " << e.what() << '\n';
    return kInput;
  } catch (const CapacityError& e) {
    err << "qap: " << e.what() << '\n';
    return kCapacity;
  } catch (const ArgumentError& e) {
    err << "qap: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "qap: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace qapcut::cli

#endif  // QAPCUT_CLI_HPP_
