#pragma once

// Independent reference evaluator for NK landscapes. It works on plain
// vectors of 0/1 decisions and rebuilds every table key by hand, sharing no
// code with nkc::Landscape beyond reading its tables and dependency lists.

#include <cstdint>
#include <vector>

namespace oracle {

using Decisions = std::vector<int>;
using Deps = std::vector<std::vector<int>>;
using Tables = std::vector<std::vector<double>>;

inline Decisions decode(std::uint32_t bits, int n) {
  Decisions d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = static_cast<int>((bits >> i) & 1u);
  return d;
}

// Key reads d_i, then each dependency in listed order, most significant first.
inline double contribution(const Deps& deps, const Tables& tables, const Decisions& d, int i) {
  std::size_t key = static_cast<std::size_t>(d[static_cast<std::size_t>(i)]);
  for (int j : deps[static_cast<std::size_t>(i)]) key = key * 2 + static_cast<std::size_t>(d[static_cast<std::size_t>(j)]);
  return tables[static_cast<std::size_t>(i)][key];
}

inline double performance(const Deps& deps, const Tables& tables, const Decisions& d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += contribution(deps, tables, d, static_cast<int>(i));
  return sum / static_cast<double>(d.size());
}

struct Maximum {
  double value = -1.0;
  std::uint32_t argmax = 0;
};

inline Maximum brute_force_max(const Deps& deps, const Tables& tables, int n) {
  Maximum best;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const double v = performance(deps, tables, decode(bits, n));
    if (v > best.value) best = {v, bits};
  }
  return best;
}

// alpha * mean over [first, first+4) + beta * mean over the rest.
inline double utility(const Deps& deps, const Tables& tables, const Decisions& d, int first, double alpha,
                      double beta) {
  double own = 0.0, residual = 0.0;
  int own_count = 0, residual_count = 0;
  for (int i = 0; i < static_cast<int>(d.size()); ++i) {
    const double c = contribution(deps, tables, d, i);
    if (i >= first && i < first + 4) {
      own += c;
      ++own_count;
    } else {
      residual += c;
      ++residual_count;
    }
  }
  return alpha * own / own_count + beta * residual / residual_count;
}

}  // namespace oracle
