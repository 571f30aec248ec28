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

// Problem data for the quadratic assignment problem
//
//   min  sum_{i != k} p_ik d_{phi(i) phi(k)} + sum_i c_{i phi(i)}
//
// over permutations phi, plus the exact evaluator and an exhaustive oracle
// used to check everything else at desk scale.

#ifndef QAPCUT_INSTANCE_HPP_
#define QAPCUT_INSTANCE_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "qapcut/errors.hpp"
#include "qapcut/matrix.hpp"

namespace qapcut {

/// Tolerance used for exact-value comparisons of objective values.
inline constexpr double kValueTolerance = 1e-9;

/// Coefficients of one QAP instance. P holds flows p_ik between facilities,
/// D distances d_jl between locations, C the linear cost of placing facility
/// i at location j. Immutable after construction.
class QapInstance {
 public:
  QapInstance(RealMatrix flow, RealMatrix distance)
      : QapInstance(flow, distance, RealMatrix(flow.rows(), flow.rows())) {}

  QapInstance(RealMatrix flow, RealMatrix distance, RealMatrix linear)
      : p_(std::move(flow)), d_(std::move(distance)), c_(std::move(linear)) {
    const std::size_t n = p_.rows();
    if (n == 0) throw ArgumentError("instance size must be at least 1");
    auto check = [n](const RealMatrix& m, const char* name) {
      if (m.rows() != n || m.cols() != n)
        throw ArgumentError(std::string(name) + " must be " +
                            std::to_string(n) + "x" + std::to_string(n));
      for (double v : m.values())
        if (!std::isfinite(v))
          throw ArgumentError(std::string(name) + " has a non-finite entry");
    };
    check(p_, "P");
    check(d_, "D");
    check(c_, "C");
  }

  std::size_t size() const noexcept { return p_.rows(); }
  const RealMatrix& flow() const noexcept { return p_; }
  const RealMatrix& distance() const noexcept { return d_; }
  const RealMatrix& linear() const noexcept { return c_; }

  double p(std::size_t i, std::size_t k) const { return p_(i, k); }
  double d(std::size_t j, std::size_t l) const { return d_(j, l); }
  double c(std::size_t i, std::size_t j) const { return c_(i, j); }

  bool has_linear_term() const {
    return std::any_of(c_.values().begin(), c_.values().end(),
                       [](double v) { return v != 0.0; });
  }

  friend bool operator==(const QapInstance&, const QapInstance&) = default;

 private:
  RealMatrix p_;
  RealMatrix d_;
  RealMatrix c_;
};

/// A bijection on {0..n-1}. Stored zero-based; `one_based()` gives the
/// conventional 1..n image array used in reports.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : map_(std::move(images)) {
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
      if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[v])
        throw ArgumentError("not a permutation");
      seen[v] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> m(images.size());
    std::transform(images.begin(), images.end(), m.begin(),
                   [](int v) { return v - 1; });
    return Permutation(std::move(m));
  }

  std::size_t size() const noexcept { return map_.size(); }
  int operator[](std::size_t i) const { return map_[i]; }
  const std::vector<int>& images() const noexcept { return map_; }

  std::vector<int> one_based() const {
    std::vector<int> m(map_);
    for (int& v : m) ++v;
    return m;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::vector<int> map_;
};

/// Point of the Birkhoff polytope LX_n (nonnegative, unit row and column
/// sums), the x-part of every relaxation point handled here.
class DoublyStochasticPoint {
 public:
  static constexpr double kDefaultTolerance = 1e-7;

  explicit DoublyStochasticPoint(RealMatrix x,
                                 double tolerance = kDefaultTolerance)
      : x_(std::move(x)) {
    if (!x_.square() || x_.rows() == 0)
      throw ArgumentError("doubly stochastic point must be square, n >= 1");
    const std::size_t n = x_.rows();
    for (std::size_t i = 0; i < n; ++i) {
      double rs = 0.0, cs = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (x_(i, j) < -tolerance)
          throw ArgumentError("negative entry in doubly stochastic point");
        rs += x_(i, j);
        cs += x_(j, i);
      }
      if (std::abs(rs - 1.0) > tolerance * n || std::abs(cs - 1.0) > tolerance * n)
        throw ArgumentError("row/column sums of x must equal 1");
    }
  }

  std::size_t size() const noexcept { return x_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return x_(i, j); }
  const RealMatrix& matrix() const noexcept { return x_; }

  bool integral(double tol = 1e-6) const {
    return std::all_of(x_.values().begin(), x_.values().end(), [tol](double v) {
      return std::abs(v) <= tol || std::abs(v - 1.0) <= tol;
    });
  }

 private:
  RealMatrix x_;
};

/// Exact objective value of `perm`. Terms with i == k are skipped: for
/// assignment points they are products x_ij x_il or x_ij x_kj, which vanish.
inline double evaluate(const QapInstance& instance, const Permutation& perm) {
  const std::size_t n = instance.size();
  if (perm.size() != n)
    throw ArgumentError("permutation size " + std::to_string(perm.size()) +
                        " does not match instance size " + std::to_string(n));
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      value += instance.p(i, k) * instance.d(j, static_cast<std::size_t>(perm[k]));
    }
    value += instance.c(i, j);
  }
  return value;
}

/// x_ij = 1 iff perm(i) = j.
inline DoublyStochasticPoint to_x_matrix(const Permutation& perm) {
  RealMatrix x(perm.size(), perm.size(), 0.0);
  for (std::size_t i = 0; i < perm.size(); ++i)
    x(i, static_cast<std::size_t>(perm[i])) = 1.0;
  return DoublyStochasticPoint(std::move(x));
}

/// Calls `fn(const std::vector<int>&)` for every permutation of {0..n-1} in
/// lexicographic order. Stops early if `fn` returns false.
template <typename Fn>
void for_each_permutation(std::size_t n, Fn&& fn) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if constexpr (std::is_same_v<decltype(fn(p)), bool>) {
      if (!fn(p)) return;
    } else {
      fn(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

inline constexpr std::size_t kBruteForceMaxSize = 9;

struct BruteForceResult {
  Permutation perm;
  double value = 0.0;
};

/// Exhaustive minimum over all n! permutations. Ties (within
/// kValueTolerance) go to the lexicographically smallest image array.
inline BruteForceResult brute_force_optimum(const QapInstance& instance) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxSize)
    throw CapacityError("brute force limited to n <= " +
                        std::to_string(kBruteForceMaxSize) + ", got n = " +
                        std::to_string(n));
  BruteForceResult best{Permutation::identity(n),
                        std::numeric_limits<double>::infinity()};
  for_each_permutation(n, [&](const std::vector<int>& p) {
    Permutation perm(p);
    const double v = evaluate(instance, perm);
    // Enumeration is lexicographic, so only a strict improvement replaces.
    if (v < best.value - kValueTolerance) best = {std::move(perm), v};
  });
  return best;
}

enum class MatrixOrder { FlowFirst, DistanceFirst };

/// Reads the QAPLIB layout: n, then n*n entries of the first matrix, then
/// n*n entries of the second. Any whitespace separates tokens.
inline QapInstance parse_qaplib(std::istream& in,
                                MatrixOrder order = MatrixOrder::FlowFirst) {
  struct Token {
    std::string text;
    std::size_t line;
  };
  std::vector<Token> tokens;
  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back({tok, line_no});
    }
  }
  auto where = [&](std::size_t idx) {
    return "token " + std::to_string(idx + 1) + " (line " +
           std::to_string(tokens[idx].line) + ")";
  };

  if (tokens.empty()) throw TruncationError("empty input: missing size n", 1, 0);

  long long n_raw = 0;
  {
    const std::string& t = tokens[0].text;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n_raw);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      throw ParseError("expected integer size at " + where(0) + ", got '" + t + "'", 0);
  }
  if (n_raw <= 0)
    throw DomainError("instance size must be positive, got " + std::to_string(n_raw));
  const auto n = static_cast<std::size_t>(n_raw);
  const std::size_t expected = 2 * n * n + 1;
  if (tokens.size() < expected)
    throw TruncationError("truncated input: expected " + std::to_string(expected) +
                              " numbers, found " + std::to_string(tokens.size()) +
                              " (missing " + std::to_string(expected - tokens.size()) + ")",
                          expected, tokens.size());
  if (tokens.size() > expected)
    throw ParseError("unexpected trailing data at " + where(expected), expected);

  auto read = [&](std::size_t idx) {
    const std::string& t = tokens[idx].text;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
      throw ParseError("non-numeric value '" + t + "' at " + where(idx), idx);
    return v;
  };
  RealMatrix first(n, n), second(n, n);
  for (std::size_t e = 0; e < n * n; ++e) {
    first(e / n, e % n) = read(1 + e);
    second(e / n, e % n) = read(1 + n * n + e);
  }
  if (order == MatrixOrder::DistanceFirst) std::swap(first, second);
  return QapInstance(std::move(first), std::move(second));
}

inline QapInstance parse_qaplib(std::string_view text,
                                MatrixOrder order = MatrixOrder::FlowFirst) {
  std::istringstream in{std::string(text)};
  return parse_qaplib(in, order);
}

/// Writes P then D in QAPLIB layout with round-trip precision. The linear
/// term has no QAPLIB representation and is dropped.
inline std::string serialize_qaplib(const QapInstance& instance) {
  const std::size_t n = instance.size();
  std::string out = std::to_string(n) + "\n";
  char buf[32];
  for (const RealMatrix* m : {&instance.flow(), &instance.distance()}) {
    out += "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", (*m)(i, j));
        if (j) out += ' ';
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

/// Seeded instance with P and D entries uniform on [0, 1). Used by the
/// property tests and the CLI's `random:N` input.
inline QapInstance random_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix p(n, n), d(n, n);
  for (auto& v : p.values()) v = u(rng);
  for (auto& v : d.values()) v = u(rng);
  return QapInstance(std::move(p), std::move(d));
}

}  // namespace qapcut

#endif  // QAPCUT_INSTANCE_HPP_
