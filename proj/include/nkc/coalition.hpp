#pragma once

// Second-price auctions per area of expertise and the reorganization schedule.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nkc/agent.hpp"
#include "nkc/errors.hpp"
#include "nkc/rng.hpp"

namespace nkc {

struct Bid {
  int agent_id = 0;
  int area = 0;
  double amount = 0.0;
};

struct AuctionOutcome {
  int area = 0;
  int winner_id = 0;
  double winning_bid = 0.0;
  double clearing_price = 0.0;
  std::vector<Bid> bids;
};

struct Coalition {
  std::vector<int> members;  // members[s] is the agent id holding area s
  int formed_at = 0;
  Strategy last_strategy;
};

// An agent bids the best expected utility it can reach with what it knows.
inline Bid compute_bid(const Agent& agent, const Landscape& landscape, Strategy residual_prev,
                       const UtilityWeights& w) {
  return {agent.id, agent.area.index, best_known_solution(agent, landscape, residual_prev, w).expected_utility};
}

// Highest bid wins (ties uniformly at random) and pays the highest losing bid,
// or its own bid when it is the only bidder. The rng is consumed only on ties.
inline AuctionOutcome run_area_auction(std::span<const Bid> bids, Rng& rng) {
  if (bids.empty()) throw ConfigError("auction held for an area without agents");
  const int area = bids.front().area;
  double top = bids.front().amount;
  for (const auto& b : bids) {
    if (b.area != area) throw ContractViolation("auction mixes bids from different areas");
    if (b.amount > top) top = b.amount;
  }

  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < bids.size(); ++i)
    if (bids[i].amount == top) leaders.push_back(i);
  const std::size_t winner =
      leaders.size() == 1 ? leaders.front() : leaders[uniform_index(rng, leaders.size())];

  double clearing = top;
  if (bids.size() > 1) {
    bool first = true;
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (i == winner) continue;
      if (first || bids[i].amount > clearing) clearing = bids[i].amount;
      first = false;
    }
  }
  return {area, bids[winner].agent_id, top, clearing, {bids.begin(), bids.end()}};
}

struct Formation {
  Coalition coalition;
  std::vector<AuctionOutcome> auctions;  // one per area, in area order
};

// Every agent bids; the winner of each area joins. Payments are recorded in
// the outcomes and change nothing else.
inline Formation form_coalition(std::span<const Agent> population, const Landscape& landscape,
                                Strategy residual_prev, const UtilityWeights& w, Rng& rng, int t) {
  const int areas = area_count(landscape.n());
  std::vector<std::vector<Bid>> by_area(static_cast<std::size_t>(areas));
  for (const auto& agent : population) {
    if (agent.area.index < 0 || agent.area.index >= areas)
      throw ConfigError("agent " + std::to_string(agent.id) + " has an invalid area");
    by_area[static_cast<std::size_t>(agent.area.index)].push_back(compute_bid(agent, landscape, residual_prev, w));
  }

  Formation out;
  out.coalition.formed_at = t;
  out.coalition.last_strategy = residual_prev;
  for (int s = 0; s < areas; ++s) {
    const auto& bids = by_area[static_cast<std::size_t>(s)];
    if (bids.empty()) throw ConfigError("no agent available for area " + std::to_string(s));
    out.auctions.push_back(run_area_auction(bids, rng));
    out.coalition.members.push_back(out.auctions.back().winner_id);
  }
  return out;
}

// Auctions fire at t = 1 and then every tau steps (1, 1+tau, 1+2tau, ...);
// tau = 0 forms the coalition once.
inline bool reorganization_due(int t, std::int64_t tau) {
  if (tau < 0) throw ConfigError("reorganization frequency tau must be non-negative");
  if (t < 1) throw ContractViolation("time steps start at 1");
  return t == 1 || (tau > 0 && (t - 1) % tau == 0);
}

}  // namespace nkc
