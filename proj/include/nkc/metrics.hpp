#pragma once

// Round normalization, averaging across rounds and the Manhattan distance.

#include <span>
#include <string>
#include <vector>

#include "nkc/errors.hpp"
#include "nkc/records.hpp"

namespace nkc {

// values[t-1] is the mean over rounds of C(d_t) / max(C).
struct NormalizedSeries {
  std::vector<double> values;
};

// Each round is normalized by its own landscape maximum; rounds are summed in
// the order given (ascending round index when produced by run_scenario).
inline NormalizedSeries normalized_mean_series(std::span<const RoundResult> rounds) {
  if (rounds.empty()) throw ConfigError("cannot average an empty set of rounds");
  const std::size_t steps = rounds.front().records.size();
  for (const auto& r : rounds) {
    if (r.records.size() != steps) throw ConfigError("rounds differ in their number of time steps");
    if (!(r.global_max > 0.0)) throw ConfigError("round " + std::to_string(r.round_index) + " has no positive maximum");
  }

  NormalizedSeries series;
  series.values.assign(steps, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    double sum = 0.0;
    for (const auto& r : rounds) sum += r.records[t].raw_performance / r.global_max;
    series.values[t] = sum / static_cast<double>(rounds.size());
  }
  return series;
}

// D = sum over t of (1 - C~_t). Lower is better; 0 means optimal throughout.
inline double manhattan_distance(const NormalizedSeries& series) {
  if (series.values.empty()) throw ConfigError("manhattan distance of an empty series");
  double d = 0.0;
  for (double v : series.values) d += 1.0 - v;
  return d;
}

struct ScenarioSummary {
  std::string scenario_id;
  int k = 0;
  Structure structure = Structure::full;
  double p = 0.0;
  long long tau = 0;
  double distance = 0.0;
  NormalizedSeries series;
};

}  // namespace nkc
