#pragma once

// Agents, their repertoires of 4-bit partial solutions, utilities and the
// per-step learn/forget adaptation.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nkc/errors.hpp"
#include "nkc/landscape.hpp"
#include "nkc/rng.hpp"

namespace nkc {

inline constexpr int kAreaWidth = 4;
inline constexpr int kPartialSolutions = 1 << kAreaWidth;

// Area s owns decisions [4s, 4s+4); the remaining decisions are its residual.
struct Area {
  int index = 0;

  constexpr int first() const noexcept { return index * kAreaWidth; }
  constexpr bool contains(int decision) const noexcept {
    return decision >= first() && decision < first() + kAreaWidth;
  }
  constexpr std::uint32_t mask() const noexcept { return ((1u << kAreaWidth) - 1u) << first(); }
};

inline int area_count(int n) {
  if (n < kAreaWidth || n % kAreaWidth != 0)
    throw ConfigError("decision count must be a positive multiple of " + std::to_string(kAreaWidth));
  return n / kAreaWidth;
}

// Bit j addresses decision first()+j of the owning area; the integer value is
// the encoding used for every tie-break.
struct PartialSolution {
  std::uint8_t bits = 0;

  constexpr PartialSolution() = default;
  constexpr explicit PartialSolution(unsigned v) : bits(static_cast<std::uint8_t>(v)) {
    if (v >= kPartialSolutions) throw ContractViolation("partial solution out of range");
  }

  constexpr PartialSolution neighbor(int j) const { return PartialSolution(bits ^ (1u << j)); }

  static PartialSolution from_string(std::string_view text) {
    if (text.size() != kAreaWidth) throw ParseError(0, "partial solution needs 4 bits");
    unsigned v = 0;
    for (int j = 0; j < kAreaWidth; ++j) {
      if (text[static_cast<std::size_t>(j)] == '1') v |= 1u << j;
      else if (text[static_cast<std::size_t>(j)] != '0') throw ParseError(0, "partial solution must be binary");
    }
    return PartialSolution(v);
  }

  std::string to_string() const {
    std::string out(kAreaWidth, '0');
    for (int j = 0; j < kAreaWidth; ++j)
      if ((bits >> j) & 1u) out[static_cast<std::size_t>(j)] = '1';
    return out;
  }

  friend constexpr bool operator==(PartialSolution, PartialSolution) = default;
  friend constexpr auto operator<=>(PartialSolution, PartialSolution) = default;
};

inline constexpr int hamming(PartialSolution a, PartialSolution b) { return std::popcount(unsigned(a.bits ^ b.bits)); }

// Set of known partial solutions, iterated in ascending encoding.
class Repertoire {
 public:
  constexpr Repertoire() = default;
  constexpr explicit Repertoire(PartialSolution initial) { insert(initial); }

  constexpr bool contains(PartialSolution s) const noexcept { return (mask_ >> s.bits) & 1u; }
  constexpr void insert(PartialSolution s) noexcept { mask_ |= static_cast<std::uint16_t>(1u << s.bits); }
  constexpr void erase(PartialSolution s) noexcept { mask_ &= static_cast<std::uint16_t>(~(1u << s.bits)); }
  constexpr int size() const noexcept { return std::popcount(mask_); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::uint16_t mask() const noexcept { return mask_; }

  // The m-th member in ascending encoding.
  PartialSolution nth(int m) const {
    std::uint16_t rest = mask_;
    for (int skipped = 0; skipped < m; ++skipped) rest &= static_cast<std::uint16_t>(rest - 1);
    if (rest == 0) throw ContractViolation("repertoire index out of range");
    return PartialSolution(static_cast<unsigned>(std::countr_zero(rest)));
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint16_t rest = mask_; rest != 0; rest &= static_cast<std::uint16_t>(rest - 1))
      fn(PartialSolution(static_cast<unsigned>(std::countr_zero(rest))));
  }

  std::vector<PartialSolution> members() const {
    std::vector<PartialSolution> out;
    for_each([&](PartialSolution s) { out.push_back(s); });
    return out;
  }

  friend constexpr bool operator==(Repertoire, Repertoire) = default;

 private:
  std::uint16_t mask_ = 0;
};

struct UtilityWeights {
  double alpha = 0.5;
  double beta = 0.5;

  void validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ConfigError("utility weights must be non-negative");
  }
};

struct Agent {
  int id = 0;
  Area area;
  Repertoire repertoire;
  std::optional<PartialSolution> current_choice;
};

// residual with the area's decisions replaced by own.
inline Strategy hybrid_strategy(Area area, PartialSolution own, Strategy residual) {
  const std::uint32_t bits = (residual.bits() & ~area.mask()) | (std::uint32_t{own.bits} << area.first());
  return Strategy(bits, residual.size());
}

inline PartialSolution partial_of(Strategy s, Area area) {
  return PartialSolution((s.bits() & area.mask()) >> area.first());
}

// alpha * own-area mean + beta * residual mean of the contributions of s.
inline double utility_of(const Landscape& landscape, Area area, Strategy s, const UtilityWeights& w) {
  const auto c = landscape.contributions(s);
  const int n = landscape.n();
  double own = 0.0;
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    if (area.contains(i)) own += c[static_cast<std::size_t>(i)];
    else residual += c[static_cast<std::size_t>(i)];
  }
  return w.alpha * own / kAreaWidth + w.beta * residual / (n - kAreaWidth);
}

// Contribution of decision i (inside the area) when the area plays own and the
// residual decisions keep their previous values.
inline double expected_contribution(const Landscape& landscape, Area area, int i, PartialSolution own,
                                    Strategy residual_prev) {
  if (!area.contains(i))
    throw ContractViolation("decision " + std::to_string(i) + " is outside area " + std::to_string(area.index));
  return landscape.contribution(i, hybrid_strategy(area, own, residual_prev));
}

inline double expected_utility(const Agent& agent, const Landscape& landscape, PartialSolution candidate,
                               Strategy residual_prev, const UtilityWeights& w) {
  return utility_of(landscape, agent.area, hybrid_strategy(agent.area, candidate, residual_prev), w);
}

inline double realized_utility(const Agent& agent, const Landscape& landscape, Strategy strategy,
                               const UtilityWeights& w) {
  return utility_of(landscape, agent.area, strategy, w);
}

struct ScoredSolution {
  PartialSolution solution;
  double expected_utility = 0.0;
};

// Argmax of expected utility over the repertoire; ties keep the smallest encoding.
inline ScoredSolution best_known_solution(const Agent& agent, const Landscape& landscape, Strategy residual_prev,
                                          const UtilityWeights& w) {
  if (agent.repertoire.empty()) throw ContractViolation("agent " + std::to_string(agent.id) + " has no solutions");
  ScoredSolution best{PartialSolution{}, -1.0};
  agent.repertoire.for_each([&](PartialSolution s) {
    const double u = expected_utility(agent, landscape, s, residual_prev, w);
    if (u > best.expected_utility) best = {s, u};
  });
  return best;
}

inline PartialSolution choose_solution(Agent& agent, const Landscape& landscape, Strategy residual_prev,
                                       const UtilityWeights& w) {
  const auto best = best_known_solution(agent, landscape, residual_prev, w).solution;
  agent.current_choice = best;
  return best;
}

// One step of individual adaptation, learning before forgetting.
//  learn  (prob p): pick a member uniformly, flip one of its 4 bits uniformly,
//                   add the result (no-op when already known).
//  forget (prob p): the member with the lowest expected utility against
//                   context is dropped unless it is the current choice or the
//                   only member left; ties resolve to the smallest encoding.
inline void adapt_capabilities(Agent& agent, Rng& rng, double p, const Landscape& landscape, Strategy context,
                               const UtilityWeights& w) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("adaptation probability must lie in [0,1]");
  if (bernoulli(rng, p)) {
    const auto base = agent.repertoire.nth(static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(agent.repertoire.size()))));
    agent.repertoire.insert(base.neighbor(static_cast<int>(uniform_index(rng, kAreaWidth))));
  }
  if (bernoulli(rng, p) && agent.repertoire.size() > 1) {
    std::optional<ScoredSolution> worst;
    agent.repertoire.for_each([&](PartialSolution s) {
      const double u = expected_utility(agent, landscape, s, context, w);
      if (!worst || u < worst->expected_utility) worst = ScoredSolution{s, u};
    });
    if (worst->solution != agent.current_choice) agent.repertoire.erase(worst->solution);
  }
}

}  // namespace nkc
