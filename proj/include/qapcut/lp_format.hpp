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

// CPLEX-style LP text files: writer for any LpModel, and a reader covering
// the subset the writer produces plus the common hand-written forms
// (implicit unit coefficients, default [0, inf) bounds, Binaries section).

#ifndef QAPCUT_LP_FORMAT_HPP_
#define QAPCUT_LP_FORMAT_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/lp.hpp"

namespace qapcut {

namespace detail {

inline std::string lp_number(double v) {
  if (v == kInfinity) return "+inf";
  if (v == -kInfinity) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class LineWrapper {
 public:
  explicit LineWrapper(std::string& out) : out_(out) {}
  void put(const std::string& piece) {
    if (width_ + piece.size() > 78 && width_ > 0) {
      out_ += "\n   ";
      width_ = 3;
    }
    out_ += piece;
    width_ += piece.size();
  }
  void start(const std::string& head) {
    out_ += head;
    width_ = head.size();
  }
  void end() {
    out_ += '\n';
    width_ = 0;
  }

 private:
  std::string& out_;
  std::size_t width_ = 0;
};

inline void write_terms(LineWrapper& w, const LpModel& m, const std::vector<Term>& terms) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = terms[k].coef;
    std::string piece = k == 0 ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    piece += lp_number(std::abs(c)) + " " + m.variable(terms[k].var).name;
    w.put(piece);
  }
}

}  // namespace detail

/// Renders `model` in LP text format. Every variable appears in the
/// objective (zero coefficients included) so that re-reading preserves the
/// variable order.
inline std::string write_lp(const LpModel& model, const std::string& title = "qapcut model") {
  std::string out = "\\ " + title + "\n";
  out += model.sense() == Sense::Minimize ? "Minimize\n" : "Maximize\n";
  detail::LineWrapper w(out);
  {
    std::vector<Term> obj;
    for (std::size_t j = 0; j < model.num_variables(); ++j)
      obj.push_back({static_cast<int>(j), model.objective()[j]});
    w.start(" obj: ");
    // Zero coefficients are written explicitly to pin variable order.
    for (std::size_t k = 0; k < obj.size(); ++k) {
      const double c = obj[k].coef;
      std::string piece = k == 0 ? (std::signbit(c) ? "-" : "") : (std::signbit(c) ? " - " : " + ");
      piece += detail::lp_number(std::abs(c)) + " " + model.variable(obj[k].var).name;
      w.put(piece);
    }
    if (model.objective_constant() != 0.0) {
      const double c = model.objective_constant();
      w.put((c < 0 ? " - " : " + ") + detail::lp_number(std::abs(c)));
    }
    w.end();
  }
  out += "Subject To\n";
  for (const Constraint& row : model.constraints()) {
    w.start(" " + row.name + ": ");
    if (row.terms.empty() && model.num_variables() > 0)
      w.put("0 " + model.variable(0).name);
    else
      detail::write_terms(w, model, row.terms);
    const char* rel = row.relation == Relation::LessEqual ? " <= "
                      : row.relation == Relation::GreaterEqual ? " >= " : " = ";
    w.put(rel + detail::lp_number(row.rhs));
    w.end();
  }
  out += "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.lower == 0.0 && v.upper == kInfinity) continue;
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out += " " + v.name + " free\n";
    } else if (v.lower == v.upper) {
      out += " " + v.name + " = " + detail::lp_number(v.lower) + "\n";
    } else {
      out += " " + detail::lp_number(v.lower) + " <= " + v.name + " <= " +
             detail::lp_number(v.upper) + "\n";
    }
  }
  bool any_int = std::any_of(model.variables().begin(), model.variables().end(),
                             [](const Variable& v) { return v.integer; });
  if (any_int) {
    out += "Generals\n";
    w.start("");
    for (const Variable& v : model.variables())
      if (v.integer) w.put(" " + v.name);
    w.end();
  }
  out += "End\n";
  return out;
}

namespace detail {

enum class TokKind { Number, Name, Sign, Relation, Colon };

struct LpToken {
  TokKind kind;
  std::string text;
  double value = 0.0;
  std::size_t line = 0;
};

inline bool parse_number(std::string_view s, double& out) {
  if (s == "inf" || s == "infinity" || s == "INF" || s == "Inf" || s == "Infinity") {
    out = kInfinity;
    return true;
  }
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline std::vector<LpToken> tokenize_lp(std::string_view text, std::size_t line) {
  std::vector<LpToken> toks;
  std::size_t i = 0;
  auto is_op = [](char c) { return c == '<' || c == '>' || c == '=' || c == ':' || c == '+' || c == '-'; };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i;
      while (j < text.size() && (text[j] == '<' || text[j] == '>' || text[j] == '=')) ++j;
      std::string op(text.substr(i, j - i));
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      if (op != "<=" && op != ">=" && op != "=")
        throw ParseError("bad relation '" + op + "' on line " + std::to_string(line), toks.size());
      toks.push_back({TokKind::Relation, op, 0.0, line});
      i = j;
    } else if (c == ':') {
      toks.push_back({TokKind::Colon, ":", 0.0, line});
      ++i;
    } else if (c == '+' || c == '-') {
      toks.push_back({TokKind::Sign, std::string(1, c), 0.0, line});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size()) {
        const char d = text[j];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E') {
          ++j;
        } else if ((d == '+' || d == '-') && (text[j - 1] == 'e' || text[j - 1] == 'E')) {
          ++j;
        } else {
          break;
        }
      }
      double v = 0.0;
      if (!parse_number(text.substr(i, j - i), v))
        throw ParseError("bad number '" + std::string(text.substr(i, j - i)) + "' on line " +
                             std::to_string(line),
                         toks.size());
      toks.push_back({TokKind::Number, std::string(text.substr(i, j - i)), v, line});
      i = j;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && !is_op(text[j])) ++j;
      std::string name(text.substr(i, j - i));
      double v = 0.0;
      if (parse_number(name, v))
        toks.push_back({TokKind::Number, name, v, line});
      else
        toks.push_back({TokKind::Name, name, 0.0, line});
      i = j;
    }
  }
  return toks;
}

enum class Section { None, Objective, Constraints, Bounds, Generals, Binaries, End };

inline Section section_keyword(std::string line, Sense& sense) {
  std::transform(line.begin(), line.end(), line.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return Section::None;
  line = line.substr(b);
  line.erase(line.find_last_not_of(" \t\r") + 1);
  if (line == "minimize" || line == "minimum" || line == "min") {
    sense = Sense::Minimize;
    return Section::Objective;
  }
  if (line == "maximize" || line == "maximum" || line == "max") {
    sense = Sense::Maximize;
    return Section::Objective;
  }
  if (line == "subject to" || line == "such that" || line == "st" || line == "s.t.")
    return Section::Constraints;
  if (line == "bounds" || line == "bound") return Section::Bounds;
  if (line == "generals" || line == "general" || line == "gen" || line == "integers")
    return Section::Generals;
  if (line == "binaries" || line == "binary" || line == "bin") return Section::Binaries;
  if (line == "end") return Section::End;
  return Section::None;
}

class LpReader {
 public:
  LpModel read(std::string_view text) {
    std::map<Section, std::string> body;
    std::map<Section, std::size_t> first_line;
    Section current = Section::None;
    Sense sense = Sense::Minimize;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::size_t, std::string>> bound_lines;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto c = line.find('\\'); c != std::string::npos) line.erase(c);
      const Section s = section_keyword(line, sense);
      if (s != Section::None) {
        current = s;
        first_line.emplace(s, line_no + 1);
        if (s == Section::End) break;
        continue;
      }
      if (current == Section::None) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
          throw ParseError("content before first section on line " + std::to_string(line_no), 0);
        continue;
      }
      if (current == Section::Bounds)
        bound_lines.emplace_back(line_no, line);
      else
        body[current] += line + "\n";
    }
    model_ = LpModel(sense);

    parse_objective(tokenize_lp(body[Section::Objective], first_line[Section::Objective]));
    parse_constraints(tokenize_lp(body[Section::Constraints], first_line[Section::Constraints]));
    for (const auto& [no, text] : bound_lines) parse_bound(tokenize_lp(text, no));
    for (const auto& t : tokenize_lp(body[Section::Generals], 0))
      if (t.kind == TokKind::Name) model_.set_integer(var(t.text), true);
    for (const auto& t : tokenize_lp(body[Section::Binaries], 0))
      if (t.kind == TokKind::Name) {
        const int j = var(t.text);
        model_.set_integer(j, true);
        model_.set_bounds(j, 0.0, 1.0);
      }
    return std::move(model_);
  }

 private:
  int var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const int j = model_.add_variable(name, 0.0, kInfinity);
    index_.emplace(name, j);
    return j;
  }

  [[noreturn]] static void fail(const std::string& msg, const LpToken& t) {
    throw ParseError(msg + " near '" + t.text + "' on line " + std::to_string(t.line), 0);
  }

  // Parses [sign] [number] [name] sequences starting at `pos` until a
  // relation (or end). Pure constants accumulate into `constant`.
  std::vector<Term> parse_expression(const std::vector<LpToken>& toks, std::size_t& pos,
                                     double& constant) {
    std::vector<Term> terms;
    while (pos < toks.size() && toks[pos].kind != TokKind::Relation) {
      double sign = 1.0;
      while (pos < toks.size() && toks[pos].kind == TokKind::Sign) {
        if (toks[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= toks.size()) fail("dangling sign", toks.back());
      double coef = 1.0;
      bool have_number = false;
      if (toks[pos].kind == TokKind::Number) {
        coef = toks[pos].value;
        have_number = true;
        ++pos;
      }
      if (pos < toks.size() && toks[pos].kind == TokKind::Name &&
          !(pos + 1 < toks.size() && toks[pos + 1].kind == TokKind::Colon)) {
        terms.push_back({var(toks[pos].text), sign * coef});
        ++pos;
      } else if (have_number) {
        constant += sign * coef;
      } else {
        fail("expected term", toks[pos]);
      }
    }
    return terms;
  }

  void parse_objective(const std::vector<LpToken>& toks) {
    std::size_t pos = 0;
    if (toks.size() >= 2 && toks[0].kind == TokKind::Name && toks[1].kind == TokKind::Colon) pos = 2;
    double constant = 0.0;
    auto terms = parse_expression(toks, pos, constant);
    if (pos != toks.size()) fail("unexpected token in objective", toks[pos]);
    for (const Term& t : terms)
      model_.set_objective_coefficient(t.var, model_.objective()[static_cast<std::size_t>(t.var)] + t.coef);
    model_.set_objective_constant(constant);
  }

  void parse_constraints(const std::vector<LpToken>& toks) {
    std::size_t pos = 0;
    std::size_t unnamed = 0;
    while (pos < toks.size()) {
      std::string name;
      if (pos + 1 < toks.size() && toks[pos].kind == TokKind::Name && toks[pos + 1].kind == TokKind::Colon) {
        name = toks[pos].text;
        pos += 2;
      } else {
        name = "R" + std::to_string(++unnamed);
      }
      double constant = 0.0;
      auto terms = parse_expression(toks, pos, constant);
      if (pos >= toks.size()) fail("constraint without relation", toks.back());
      const std::string op = toks[pos++].text;
      double sign = 1.0;
      while (pos < toks.size() && toks[pos].kind == TokKind::Sign) {
        if (toks[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= toks.size() || toks[pos].kind != TokKind::Number)
        fail("expected right-hand side", toks[std::min(pos, toks.size() - 1)]);
      const double rhs = sign * toks[pos++].value - constant;
      const Relation rel = op == "<=" ? Relation::LessEqual
                           : op == ">=" ? Relation::GreaterEqual : Relation::Equal;
      model_.add_constraint(name, std::move(terms), rel, rhs);
    }
  }

  static bool signed_number(const std::vector<LpToken>& t, std::size_t& pos, double& v) {
    double sign = 1.0;
    std::size_t p = pos;
    while (p < t.size() && t[p].kind == TokKind::Sign) {
      if (t[p].text == "-") sign = -sign;
      ++p;
    }
    if (p < t.size() && t[p].kind == TokKind::Number) {
      v = sign * t[p].value;
      pos = p + 1;
      return true;
    }
    return false;
  }

  void parse_bound(const std::vector<LpToken>& t) {
    if (t.empty()) return;
    std::size_t pos = 0;
    double lead = 0.0;
    if (signed_number(t, pos, lead)) {
      // lead <= name [<= upper]   or   lead >= name
      if (pos + 1 >= t.size() || t[pos].kind != TokKind::Relation || t[pos + 1].kind != TokKind::Name)
        fail("malformed bound", t[0]);
      const std::string op = t[pos].text;
      const int j = var(t[pos + 1].text);
      const Variable v = model_.variable(j);
      pos += 2;
      double lo = v.lower, hi = v.upper;
      if (op == "<=") lo = lead;
      else if (op == ">=") hi = lead;
      else lo = hi = lead;
      if (pos < t.size()) {
        double rhs = 0.0;
        if (t[pos].kind != TokKind::Relation) fail("malformed bound", t[pos]);
        const std::string op2 = t[pos++].text;
        if (!signed_number(t, pos, rhs)) fail("malformed bound", t.back());
        if (op2 == "<=") hi = rhs;
        else if (op2 == ">=") lo = rhs;
        else lo = hi = rhs;
      }
      model_.set_bounds(j, lo, hi);
      return;
    }
    if (t[0].kind != TokKind::Name) fail("malformed bound", t[0]);
    const int j = var(t[0].text);
    if (t.size() == 2 && t[1].kind == TokKind::Name &&
        (t[1].text == "free" || t[1].text == "Free" || t[1].text == "FREE")) {
      model_.set_bounds(j, -kInfinity, kInfinity);
      return;
    }
    pos = 1;
    if (pos >= t.size() || t[pos].kind != TokKind::Relation) fail("malformed bound", t[0]);
    const std::string op = t[pos++].text;
    double value = 0.0;
    if (!signed_number(t, pos, value)) fail("malformed bound", t.back());
    const Variable v = model_.variable(j);
    if (op == "<=") model_.set_bounds(j, v.lower, value);
    else if (op == ">=") model_.set_bounds(j, value, v.upper);
    else model_.set_bounds(j, value, value);
  }

  LpModel model_;
  std::map<std::string, int> index_;
};

}  // namespace detail

/// Reads an LP text file back into a model.
inline LpModel read_lp(std::string_view text) { return detail::LpReader().read(text); }

}  // namespace qapcut

#endif  // QAPCUT_LP_FORMAT_HPP_
