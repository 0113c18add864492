#pragma once

// NK performance landscapes: interaction matrices, contribution tables and the
// exhaustive global maximum used for normalization.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nkc/errors.hpp"
#include "nkc/rng.hpp"

namespace nkc {

// Landscapes are enumerated exhaustively, so n is kept small.
inline constexpr int kMaxDecisions = 16;

enum class Structure { concentrated, scattered, full, custom };

inline std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::concentrated: return "concentrated";
    case Structure::scattered: return "scattered";
    case Structure::full: return "full";
    case Structure::custom: return "custom";
  }
  return "?";
}

inline Structure parse_structure(std::string_view text) {
  if (text == "concentrated") return Structure::concentrated;
  if (text == "scattered") return Structure::scattered;
  if (text == "full") return Structure::full;
  if (text == "custom") return Structure::custom;
  throw ConfigError("unknown interaction structure '" + std::string(text) + "'");
}

// A full assignment of the n binary decisions. Decision i is bit i of `bits`.
class Strategy {
 public:
  constexpr Strategy() = default;
  constexpr Strategy(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > kMaxDecisions) throw ContractViolation("strategy length out of range");
    if (n < 32 && (bits >> n) != 0) throw ContractViolation("strategy has bits beyond its length");
  }

  static Strategy from_string(std::string_view text) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') bits |= 1u << i;
      else if (text[i] != '0') throw ParseError(0, "strategy must consist of '0' and '1'");
    }
    return Strategy(bits, static_cast<int>(text.size()));
  }

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr int size() const noexcept { return n_; }
  constexpr int operator[](int i) const noexcept { return static_cast<int>((bits_ >> i) & 1u); }
  constexpr Strategy flipped(int i) const { return Strategy(bits_ ^ (1u << i), n_); }

  // Decision 0 first, e.g. "100000000000" has only d_0 set.
  std::string to_string() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
      if ((*this)[i]) out[static_cast<std::size_t>(i)] = '1';
    return out;
  }

  friend constexpr bool operator==(Strategy, Strategy) = default;

 private:
  std::uint32_t bits_ = 0;
  int n_ = 0;
};

// deps(i) lists the k decisions other than i that affect contribution i,
// always in ascending index order.
class InteractionMatrix {
 public:
  InteractionMatrix(int n, int k, Structure structure, std::vector<std::vector<int>> deps)
      : n_(n), k_(k), structure_(structure), deps_(std::move(deps)) {
    validate();
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  Structure structure() const noexcept { return structure_; }
  std::span<const int> deps(int i) const { return deps_.at(static_cast<std::size_t>(i)); }

  bool depends_on(int i, int j) const {
    auto row = deps(i);
    return std::binary_search(row.begin(), row.end(), j);
  }

  // n lines of n characters, 'x' marking a dependency (diagonal included).
  std::string to_text() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) out += (i == j || depends_on(i, j)) ? 'x' : '.';
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const InteractionMatrix&, const InteractionMatrix&) = default;

 private:
  void validate() {
    if (n_ < 1 || n_ > kMaxDecisions)
      throw ConfigError("decision count must lie in [1, " + std::to_string(kMaxDecisions) + "]");
    if (k_ < 0 || k_ > n_ - 1) throw ConfigError("k must lie in [0, n-1]");
    if (deps_.size() != static_cast<std::size_t>(n_)) throw ConfigError("matrix needs one row per decision");
    for (int i = 0; i < n_; ++i) {
      auto& row = deps_[static_cast<std::size_t>(i)];
      std::sort(row.begin(), row.end());
      if (row.size() != static_cast<std::size_t>(k_))
        throw ConfigError("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                          " dependencies, expected " + std::to_string(k_));
      if (std::adjacent_find(row.begin(), row.end()) != row.end())
        throw ConfigError("row " + std::to_string(i) + " repeats a dependency");
      for (int j : row)
        if (j < 0 || j >= n_ || j == i)
          throw ConfigError("row " + std::to_string(i) + " has invalid dependency " + std::to_string(j));
    }
  }

  int n_;
  int k_;
  Structure structure_;
  std::vector<std::vector<int>> deps_;
};

// Canonical matrices for n = 12 in three 4-decision blocks:
//   concentrated k=3: own block
//   concentrated k=5: own block + first two decisions of block (b+1) mod 3
//   scattered k=3:    cyclic shifts {4,6,8}
//   scattered k=5:    cyclic shifts {4,5,6,7,8}
//   full k=n-1:       everything (any n)
inline InteractionMatrix build_interaction_matrix(Structure structure, int k, int n = 12) {
  std::vector<std::vector<int>> deps(static_cast<std::size_t>(std::max(n, 0)));
  const auto unsupported = [&] {
    return ConfigError("unsupported interaction structure (" + std::string(to_string(structure)) +
                       ", k=" + std::to_string(k) + ") for n=" + std::to_string(n));
  };

  if (structure == Structure::full) {
    if (k != n - 1) throw unsupported();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != i) deps[static_cast<std::size_t>(i)].push_back(j);
    return InteractionMatrix(n, k, structure, std::move(deps));
  }
  if (n != 12) throw unsupported();

  if (structure == Structure::concentrated && (k == 3 || k == 5)) {
    for (int i = 0; i < n; ++i) {
      const int block = i / 4;
      auto& row = deps[static_cast<std::size_t>(i)];
      for (int j = 4 * block; j < 4 * block + 4; ++j)
        if (j != i) row.push_back(j);
      if (k == 5) {
        const int next = 4 * ((block + 1) % 3);
        row.push_back(next);
        row.push_back(next + 1);
      }
    }
    return InteractionMatrix(n, k, structure, std::move(deps));
  }
  if (structure == Structure::scattered && (k == 3 || k == 5)) {
    const std::vector<int> shifts = k == 3 ? std::vector<int>{4, 6, 8} : std::vector<int>{4, 5, 6, 7, 8};
    for (int i = 0; i < n; ++i)
      for (int s : shifts) deps[static_cast<std::size_t>(i)].push_back((i + s) % n);
    return InteractionMatrix(n, k, structure, std::move(deps));
  }
  throw unsupported();
}

// Parses the 'x'/'.' matrix format. The structure is recorded as custom.
inline InteractionMatrix load_interaction_matrix(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  const int n = static_cast<int>(lines.size());
  if (n < 1 || n > kMaxDecisions)
    throw ParseError(lines.empty() ? 0 : lines.size(), "matrix must have between 1 and " +
                                                           std::to_string(kMaxDecisions) + " rows");
  std::vector<std::vector<int>> deps(static_cast<std::size_t>(n));
  int k = -1;
  for (int i = 0; i < n; ++i) {
    const auto& line = lines[static_cast<std::size_t>(i)];
    const auto line_no = static_cast<std::size_t>(i + 1);
    if (line.size() != static_cast<std::size_t>(n))
      throw ParseError(line_no, "expected " + std::to_string(n) + " characters, found " +
                                    std::to_string(line.size()));
    for (int j = 0; j < n; ++j) {
      const char c = line[static_cast<std::size_t>(j)];
      if (c != 'x' && c != '.') throw ParseError(line_no, std::string("unexpected character '") + c + "'");
      if (j == i) {
        if (c != 'x') throw ParseError(line_no, "diagonal entry must be 'x'");
      } else if (c == 'x') {
        deps[static_cast<std::size_t>(i)].push_back(j);
      }
    }
    const int row_k = static_cast<int>(deps[static_cast<std::size_t>(i)].size());
    if (k < 0) k = row_k;
    else if (row_k != k)
      throw ParseError(line_no, "row has " + std::to_string(row_k) + " dependencies, previous rows have " +
                                    std::to_string(k));
  }
  return InteractionMatrix(n, k, Structure::custom, std::move(deps));
}

// Contribution tables plus a cache of every strategy's contribution vector.
// Table i is indexed by a (k+1)-bit key: d_i is the most significant bit,
// followed by the bits of deps(i) in ascending index order.
class Landscape {
 public:
  Landscape(InteractionMatrix matrix, std::vector<std::vector<double>> tables)
      : matrix_(std::move(matrix)), tables_(std::move(tables)) {
    const auto n = static_cast<std::size_t>(matrix_.n());
    const std::size_t entries = std::size_t{1} << (matrix_.k() + 1);
    if (tables_.size() != n) throw ConfigError("landscape needs one contribution table per decision");
    for (const auto& table : tables_) {
      if (table.size() != entries) throw ConfigError("contribution table has the wrong size");
      for (double v : table)
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("contributions must be finite and non-negative");
    }
    build_key_lookup();
    enumerate();
  }

  const InteractionMatrix& matrix() const noexcept { return matrix_; }
  int n() const noexcept { return matrix_.n(); }
  std::span<const double> table(int i) const { return tables_.at(static_cast<std::size_t>(i)); }

  std::uint32_t table_key(int i, Strategy s) const {
    const auto idx = static_cast<std::size_t>(i) * 512;
    return key_lo_[idx + (s.bits() & 0xFFu)] | key_hi_[idx + ((s.bits() >> 8) & 0xFFu)];
  }

  double contribution(int i, Strategy s) const {
    if (i < 0 || i >= n()) throw ContractViolation("decision index " + std::to_string(i) + " out of range");
    check(s);
    return tables_[static_cast<std::size_t>(i)][table_key(i, s)];
  }

  // All n contributions of s, read from the enumeration cache.
  std::span<const double> contributions(Strategy s) const {
    check(s);
    return {cache_.data() + static_cast<std::size_t>(s.bits()) * static_cast<std::size_t>(n()),
            static_cast<std::size_t>(n())};
  }

  double performance(Strategy s) const {
    check(s);
    return performance_[s.bits()];
  }

  double global_max() const noexcept { return global_max_; }
  Strategy global_max_argmax() const noexcept { return argmax_; }

  // Copy with every table entry multiplied by factor (> 0).
  Landscape scaled(double factor) const {
    if (!(factor > 0.0)) throw ConfigError("scale factor must be positive");
    auto tables = tables_;
    for (auto& table : tables)
      for (double& v : table) v *= factor;
    return Landscape(matrix_, std::move(tables));
  }

 private:
  void check(Strategy s) const {
    if (s.size() != n()) throw ContractViolation("strategy length does not match the landscape");
  }

  void build_key_lookup() {
    const int n = matrix_.n();
    const int k = matrix_.k();
    key_lo_.assign(static_cast<std::size_t>(n) * 512, 0);
    key_hi_.assign(static_cast<std::size_t>(n) * 512, 0);
    for (int i = 0; i < n; ++i) {
      // key bit position contributed by each decision
      std::vector<int> position(static_cast<std::size_t>(n), -1);
      position[static_cast<std::size_t>(i)] = k;
      auto deps = matrix_.deps(i);
      for (int m = 0; m < k; ++m) position[static_cast<std::size_t>(deps[static_cast<std::size_t>(m)])] = k - 1 - m;
      for (std::uint32_t byte = 0; byte < 256; ++byte) {
        std::uint32_t lo = 0;
        std::uint32_t hi = 0;
        for (int b = 0; b < 8; ++b) {
          if (!((byte >> b) & 1u)) continue;
          if (b < n && position[static_cast<std::size_t>(b)] >= 0) lo |= 1u << position[static_cast<std::size_t>(b)];
          if (b + 8 < n && position[static_cast<std::size_t>(b + 8)] >= 0)
            hi |= 1u << position[static_cast<std::size_t>(b + 8)];
        }
        key_lo_[static_cast<std::size_t>(i) * 512 + byte] = lo;
        key_hi_[static_cast<std::size_t>(i) * 512 + byte] = hi;
      }
    }
  }

  // Exhaustive pass over all 2^n strategies; ties keep the smallest encoding.
  void enumerate() {
    const int n = matrix_.n();
    const std::uint32_t count = 1u << n;
    cache_.resize(static_cast<std::size_t>(count) * static_cast<std::size_t>(n));
    performance_.resize(count);
    global_max_ = -1.0;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
      const Strategy s(bits, n);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double c = tables_[static_cast<std::size_t>(i)][table_key(i, s)];
        cache_[static_cast<std::size_t>(bits) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = c;
        sum += c;
      }
      const double perf = sum / n;
      performance_[bits] = perf;
      if (perf > global_max_) {
        global_max_ = perf;
        argmax_ = s;
      }
    }
  }

  InteractionMatrix matrix_;
  std::vector<std::vector<double>> tables_;
  std::vector<std::uint32_t> key_lo_;
  std::vector<std::uint32_t> key_hi_;
  std::vector<double> cache_;
  std::vector<double> performance_;
  double global_max_ = 0.0;
  Strategy argmax_;
};

// Draws every table entry independently from U[0,1), decision by decision,
// key by key, then enumerates the global maximum.
inline Landscape generate_landscape(const InteractionMatrix& matrix, Rng& rng) {
  const std::size_t entries = std::size_t{1} << (matrix.k() + 1);
  std::vector<std::vector<double>> tables(static_cast<std::size_t>(matrix.n()));
  for (auto& table : tables) {
    table.resize(entries);
    for (double& v : table) v = uniform01(rng);
  }
  return Landscape(matrix, std::move(tables));
}

inline Landscape constant_landscape(const InteractionMatrix& matrix, double value) {
  const std::size_t entries = std::size_t{1} << (matrix.k() + 1);
  return Landscape(matrix, std::vector<std::vector<double>>(static_cast<std::size_t>(matrix.n()),
                                                            std::vector<double>(entries, value)));
}

}  // namespace nkc
