#pragma once

// Sweep configuration: a flat `key = value` text format with '#' comments.
// Keys missing from a file keep the built-in 45-scenario grid values.
//
//   cells       = 3:concentrated, 3:scattered, 5:concentrated, 5:scattered, 11:full
//   p           = 0, 0.2, 0.5
//   tau         = 0, 1, 10
//   T           = 200
//   R           = 1500
//   pool_size   = 3
//   alpha       = 0.5
//   beta        = 0.5
//   master_seed = 1
//   matrix.5.scattered = my_matrix.txt   (optional, replaces the canonical matrix)

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "nkc/engine.hpp"
#include "nkc/errors.hpp"
#include "nkc/landscape.hpp"

namespace nkc {

struct Cell {
  int k = 0;
  Structure structure = Structure::full;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct SweepSpec {
  std::vector<Cell> cells{{3, Structure::concentrated},
                          {3, Structure::scattered},
                          {5, Structure::concentrated},
                          {5, Structure::scattered},
                          {11, Structure::full}};
  std::vector<double> p_values{0.0, 0.2, 0.5};
  std::vector<std::int64_t> tau_values{0, 1, 10};
  int t_max = 200;
  int rounds = 1500;
  int pool_size = 3;
  UtilityWeights weights;
  std::uint64_t master_seed = 1;
  // "K.structure" -> matrix file, resolved against base_dir
  std::map<std::string, std::string> matrix_files;
  std::filesystem::path base_dir;

  std::size_t scenario_count() const { return cells.size() * p_values.size() * tau_values.size(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view field) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ParseError(line, "field '" + std::string(field) + "': cannot parse '" + std::string(text) + "'");
  return value;
}

template <typename T>
std::string join(const std::vector<T>& values, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace detail

inline std::string cell_key(const Cell& c) { return std::to_string(c.k) + "." + std::string(to_string(c.structure)); }

inline SweepSpec parse_sweep_spec(std::string_view text, std::filesystem::path base_dir = {}) {
  using detail::parse_number;
  SweepSpec spec;
  spec.base_dir = std::move(base_dir);
  std::set<std::string> seen;

  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(line_no, "field '" + key + "' given twice");
    if (value.empty()) throw ParseError(line_no, "field '" + key + "' has no value");

    if (key == "cells") {
      spec.cells.clear();
      for (auto item : detail::split_list(value)) {
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
          throw ParseError(line_no, "field 'cells': expected K:structure, got '" + std::string(item) + "'");
        Cell cell{parse_number<int>(detail::trim(item.substr(0, colon)), line_no, key), Structure::full};
        try {
          cell.structure = parse_structure(detail::trim(item.substr(colon + 1)));
          if (cell.structure != Structure::custom) build_interaction_matrix(cell.structure, cell.k);
        } catch (const ConfigError& e) {
          throw ParseError(line_no, "field 'cells': " + std::string(e.what()));
        }
        spec.cells.push_back(cell);
      }
    } else if (key == "p") {
      spec.p_values.clear();
      for (auto item : detail::split_list(value)) {
        const double p = parse_number<double>(item, line_no, key);
        if (!(p >= 0.0 && p <= 1.0)) throw ParseError(line_no, "field 'p': values must lie in [0,1]");
        spec.p_values.push_back(p);
      }
    } else if (key == "tau") {
      spec.tau_values.clear();
      for (auto item : detail::split_list(value)) {
        const auto tau = parse_number<std::int64_t>(item, line_no, key);
        if (tau < 0) throw ParseError(line_no, "field 'tau': values must be non-negative");
        spec.tau_values.push_back(tau);
      }
    } else if (key == "T") {
      spec.t_max = parse_number<int>(value, line_no, key);
      if (spec.t_max < 1) throw ParseError(line_no, "field 'T' must be at least 1");
    } else if (key == "R") {
      spec.rounds = parse_number<int>(value, line_no, key);
      if (spec.rounds < 1) throw ParseError(line_no, "field 'R' must be at least 1");
    } else if (key == "pool_size") {
      spec.pool_size = parse_number<int>(value, line_no, key);
      if (spec.pool_size < 1) throw ParseError(line_no, "field 'pool_size' must be at least 1");
    } else if (key == "alpha" || key == "beta") {
      const double v = parse_number<double>(value, line_no, key);
      if (!(v >= 0.0)) throw ParseError(line_no, "field '" + key + "' must be non-negative");
      (key == "alpha" ? spec.weights.alpha : spec.weights.beta) = v;
    } else if (key == "master_seed") {
      spec.master_seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key.starts_with("matrix.")) {
      spec.matrix_files[key.substr(7)] = std::string(value);
    } else {
      throw ParseError(line_no, "unknown field '" + key + "'");
    }
  }

  if (spec.cells.empty() || spec.p_values.empty() || spec.tau_values.empty())
    throw ParseError(0, "the scenario grid is empty");
  std::set<Cell> unique_cells(spec.cells.begin(), spec.cells.end());
  if (unique_cells.size() != spec.cells.size()) throw ParseError(0, "field 'cells' lists a cell twice");
  if (std::set<double>(spec.p_values.begin(), spec.p_values.end()).size() != spec.p_values.size())
    throw ParseError(0, "field 'p' lists a value twice");
  if (std::set<std::int64_t>(spec.tau_values.begin(), spec.tau_values.end()).size() != spec.tau_values.size())
    throw ParseError(0, "field 'tau' lists a value twice");
  for (const auto& [cell, path] : spec.matrix_files) {
    bool used = false;
    for (const auto& c : spec.cells) used = used || cell_key(c) == cell;
    if (!used) throw ParseError(0, "field 'matrix." + cell + "' does not name a configured cell");
  }
  return spec;
}

// Canonical text form; parse_sweep_spec(to_text(s)) reproduces s.
inline std::string to_text(const SweepSpec& spec) {
  std::string out;
  out += "cells = " + detail::join(spec.cells, [](const Cell& c) {
           return std::to_string(c.k) + ":" + std::string(to_string(c.structure));
         }) + "\n";
  out += "p = " + detail::join(spec.p_values, [](double p) { return format_number(p); }) + "\n";
  out += "tau = " + detail::join(spec.tau_values, [](std::int64_t t) { return std::to_string(t); }) + "\n";
  out += "T = " + std::to_string(spec.t_max) + "\n";
  out += "R = " + std::to_string(spec.rounds) + "\n";
  out += "pool_size = " + std::to_string(spec.pool_size) + "\n";
  out += "alpha = " + format_number(spec.weights.alpha) + "\n";
  out += "beta = " + format_number(spec.weights.beta) + "\n";
  out += "master_seed = " + std::to_string(spec.master_seed) + "\n";
  for (const auto& [cell, path] : spec.matrix_files) out += "matrix." + cell + " = " + path + "\n";
  return out;
}

inline std::string default_config_text() { return to_text(SweepSpec{}); }

// 64-bit FNV-1a, hex encoded.
inline std::string config_hash(const SweepSpec& spec) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : to_text(spec)) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  const auto res = std::to_chars(buf, buf + 16, h, 16);
  const std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

inline SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_sweep_spec(text.str(), path.parent_path());
}

// Scenario order: cells, then p, then tau, as listed.
inline std::vector<ScenarioConfig> expand(const SweepSpec& spec) {
  std::map<std::string, InteractionMatrix> overrides;
  for (const auto& [cell, file] : spec.matrix_files) {
    const auto path = spec.base_dir / file;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read matrix file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
      overrides.emplace(cell, load_interaction_matrix(text.str()));
    } catch (const ParseError& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }

  std::vector<ScenarioConfig> out;
  for (const auto& cell : spec.cells) {
    for (double p : spec.p_values) {
      for (auto tau : spec.tau_values) {
        ScenarioConfig c;
        c.k = cell.k;
        c.structure = cell.structure;
        c.p = p;
        c.tau = tau;
        c.t_max = spec.t_max;
        c.rounds = spec.rounds;
        c.pool_size = spec.pool_size;
        c.weights = spec.weights;
        c.master_seed = spec.master_seed;
        if (auto it = overrides.find(cell_key(cell)); it != overrides.end()) c.matrix_override = it->second;
        else if (cell.structure == Structure::custom)
          throw ConfigError("cell " + cell_key(cell) + " needs a matrix file");
        c.validate();
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace nkc
