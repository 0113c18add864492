#pragma once

// One simulation round: preparation, coalition formation, decisions, utility
// realization and individual adaptation over T steps. Rounds are independent
// and may run on any thread; aggregation is always in round-index order.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nkc/agent.hpp"
#include "nkc/coalition.hpp"
#include "nkc/errors.hpp"
#include "nkc/landscape.hpp"
#include "nkc/metrics.hpp"
#include "nkc/records.hpp"
#include "nkc/rng.hpp"

namespace nkc {

// Shortest decimal text that round-trips, e.g. 0.2 -> "0.2", 0 -> "0".
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

struct ScenarioConfig {
  int n = 12;
  int k = 3;
  Structure structure = Structure::concentrated;
  double p = 0.0;
  std::int64_t tau = 0;
  int t_max = 200;
  int rounds = 1500;
  UtilityWeights weights;
  int pool_size = 3;  // agents per area
  std::uint64_t master_seed = 1;
  // Replaces the canonical matrix for (structure, k) when set.
  std::optional<InteractionMatrix> matrix_override;

  void validate() const {
    area_count(n);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1], got " + format_number(p));
    if (tau < 0) throw ConfigError("tau must be non-negative");
    if (t_max < 1) throw ConfigError("T must be at least 1");
    if (rounds < 1) throw ConfigError("R must be at least 1");
    if (pool_size < 1) throw ConfigError("pool size must be at least 1");
    weights.validate();
    if (matrix_override) {
      if (matrix_override->n() != n || matrix_override->k() != k)
        throw ConfigError("matrix override does not match n/k of the scenario");
    } else {
      build_interaction_matrix(structure, k, n);
    }
  }

  InteractionMatrix matrix() const {
    return matrix_override ? *matrix_override : build_interaction_matrix(structure, k, n);
  }

  std::string scenario_id() const {
    return "K" + std::to_string(k) + "_" + std::string(to_string(structure)) + "_p" + format_number(p) + "_tau" +
           std::to_string(tau);
  }
};

struct RunOptions {
  bool record_auctions = false;
};

struct RoundState {
  int round_index = 0;
  Landscape landscape;
  std::vector<Agent> population;  // agent id == position; area = id / pool_size
  std::optional<Coalition> coalition;
  Strategy previous;  // source of the residual decisions
  int t = 1;
  Rng agent_rng;
  Rng auction_rng;
};

inline RoundState init_round(const ScenarioConfig& config, int round_index) {
  config.validate();
  const std::uint64_t seed = round_seed(config.master_seed, static_cast<std::uint64_t>(round_index));
  Rng landscape_rng = make_stream(seed, Stream::landscape);
  RoundState state{round_index,
                   generate_landscape(config.matrix(), landscape_rng),
                   {},
                   std::nullopt,
                   Strategy{},
                   1,
                   make_stream(seed, Stream::agents),
                   make_stream(seed, Stream::auction)};

  const int areas = area_count(config.n);
  state.population.reserve(static_cast<std::size_t>(areas * config.pool_size));
  for (int s = 0; s < areas; ++s) {
    for (int j = 0; j < config.pool_size; ++j) {
      const auto initial = PartialSolution(static_cast<unsigned>(uniform_index(state.agent_rng, kPartialSolutions)));
      state.population.push_back(Agent{static_cast<int>(state.population.size()), Area{s}, Repertoire(initial), {}});
    }
  }
  state.previous = Strategy(static_cast<std::uint32_t>(uniform_index(state.agent_rng, std::uint64_t{1} << config.n)),
                            config.n);
  return state;
}

inline TimeStepRecord step(RoundState& state, const ScenarioConfig& config, const RunOptions& options = {}) {
  if (state.t > config.t_max)
    throw ContractViolation("step " + std::to_string(state.t) + " is past T = " + std::to_string(config.t_max));
  const auto& landscape = state.landscape;
  const auto& w = config.weights;

  TimeStepRecord record;
  record.t = state.t;

  if (!state.coalition || reorganization_due(state.t, config.tau)) {
    auto formation = form_coalition(state.population, landscape, state.previous, w, state.auction_rng, state.t);
    state.coalition = std::move(formation.coalition);
    record.reorganized = true;
    if (options.record_auctions) record.auctions = std::move(formation.auctions);
  }

  // Members decide simultaneously against the t-1 residual.
  std::uint32_t bits = 0;
  for (int id : state.coalition->members) {
    auto& agent = state.population[static_cast<std::size_t>(id)];
    const auto choice = choose_solution(agent, landscape, state.previous, w);
    bits |= std::uint32_t{choice.bits} << agent.area.first();
  }
  const Strategy strategy(bits, config.n);

  record.strategy = strategy;
  record.raw_performance = landscape.performance(strategy);
  record.normalized_performance = record.raw_performance / landscape.global_max();
  record.members = state.coalition->members;
  for (int id : state.coalition->members)
    record.utilities.push_back(realized_utility(state.population[static_cast<std::size_t>(id)], landscape, strategy, w));

  // Adaptation judges solutions by the same t-1 expectations used for the choice.
  for (auto& agent : state.population) adapt_capabilities(agent, state.agent_rng, config.p, landscape, state.previous, w);

  state.coalition->last_strategy = strategy;
  state.previous = strategy;
  ++state.t;
  return record;
}

inline RoundResult run_round(const ScenarioConfig& config, int round_index, const RunOptions& options = {}) {
  RoundState state = init_round(config, round_index);
  RoundResult result{round_index, state.landscape.global_max(), {}};
  result.records.reserve(static_cast<std::size_t>(config.t_max));
  while (state.t <= config.t_max) result.records.push_back(step(state, config, options));
  return result;
}

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RoundResult> rounds;  // rounds[r-1] is round r
  NormalizedSeries series;
  double distance = 0.0;

  ScenarioSummary summary() const {
    return {config.scenario_id(), config.k, config.structure, config.p, config.tau, distance, series};
  }
};

// Runs rounds 1..R on up to `jobs` threads. Output does not depend on jobs.
inline ScenarioResult run_scenario(const ScenarioConfig& config, unsigned jobs = 1, const RunOptions& options = {}) {
  config.validate();
  ScenarioResult result{config, std::vector<RoundResult>(static_cast<std::size_t>(config.rounds)), {}, 0.0};

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < config.rounds; r = next++) {
      try {
        result.rounds[static_cast<std::size_t>(r)] = run_round(config, r + 1, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned threads = std::clamp(jobs, 1u, static_cast<unsigned>(config.rounds));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.series = normalized_mean_series(result.rounds);
  result.distance = manhattan_distance(result.series);
  return result;
}

}  // namespace nkc
