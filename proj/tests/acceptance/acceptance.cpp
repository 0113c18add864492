// Acceptance suite: desk-scale replication (R = 200, T = 200) of the
// directional results plus the oracle, invariant, determinism and runtime
// gates. Prints one PASS/FAIL line per criterion; exits non-zero on any FAIL.
//
//   acceptance [--out DIR] [--jobs J]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nkc/nkc.hpp"
#include "oracle/brute_force.hpp"

using namespace nkc;
namespace fs = std::filesystem;

namespace {

constexpr int kRounds = 200;
constexpr int kSteps = 200;
constexpr std::uint64_t kDefaultSeed = 1;
const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};
constexpr double kRuntimeLimitSeconds = 600.0;

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Outcome> g_outcomes;

void report(std::string name, bool pass, std::string detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << std::endl;
  g_outcomes.push_back({std::move(name), pass, std::move(detail)});
}

std::string fmt(double v, int precision = 2) { return format_fixed(v, precision); }

std::string id(int k, std::string_view structure, double p, int tau) {
  return "K" + std::to_string(k) + "_" + std::string(structure) + "_p" + format_number(p) + "_tau" + std::to_string(tau);
}

SweepSpec desk_spec(std::uint64_t seed) {
  SweepSpec spec;
  spec.rounds = kRounds;
  spec.t_max = kSteps;
  spec.master_seed = seed;
  return spec;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// D by scenario id, one entry per master seed (same order as kSeeds).
using DistanceTable = std::map<std::string, std::vector<double>>;

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

std::vector<double> minus(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Oracle equivalence

void check_oracle() {
  const std::vector<std::pair<Structure, int>> cells{{Structure::concentrated, 3},
                                                     {Structure::concentrated, 5},
                                                     {Structure::scattered, 3},
                                                     {Structure::scattered, 5},
                                                     {Structure::full, 11}};
  int landscapes = 0;
  long mismatches = 0;
  int max_mismatches = 0;
  for (int seed = 0; seed < 10; ++seed) {
    for (auto [s, k] : cells) {
      Rng rng(static_cast<std::uint64_t>(seed) * 7919 + static_cast<std::uint64_t>(k));
      const auto l = generate_landscape(build_interaction_matrix(s, k), rng);
      oracle::Deps deps;
      oracle::Tables tables;
      for (int i = 0; i < 12; ++i) {
        auto d = l.matrix().deps(i);
        deps.emplace_back(d.begin(), d.end());
        auto t = l.table(i);
        tables.emplace_back(t.begin(), t.end());
      }
      for (std::uint32_t bits = 0; bits < 4096; ++bits)
        if (l.performance(Strategy(bits, 12)) != oracle::performance(deps, tables, oracle::decode(bits, 12))) ++mismatches;
      const auto best = oracle::brute_force_max(deps, tables, 12);
      if (best.value != l.global_max() || best.argmax != l.global_max_argmax().bits()) ++max_mismatches;
      ++landscapes;
    }
  }
  report("oracle equivalence", mismatches == 0 && max_mismatches == 0 && landscapes == 50,
         std::to_string(landscapes) + " landscapes x 4096 strategies, " + std::to_string(mismatches) +
             " performance mismatches, " + std::to_string(max_mismatches) + " global-max mismatches");
}

// ---------------------------------------------------------------------------
// Invariant suite

struct InvariantLedger {
  std::map<std::string, long> violations;
  std::map<std::string, long> checks;
  void expect(const std::string& what, bool ok) {
    ++checks[what];
    if (!ok) ++violations[what];
  }
};

void check_invariants() {
  InvariantLedger ledger;
  const UtilityWeights w{0.5, 0.5};

  // normalization bounds, schedule, membership, repertoire rules on live rounds
  for (auto cell : SweepSpec{}.cells) {
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
      for (std::int64_t tau : {0, 1, 10}) {
        ScenarioConfig c;
        c.k = cell.k;
        c.structure = cell.structure;
        c.p = p;
        c.tau = tau;
        c.t_max = 120;
        c.rounds = 3;
        c.master_seed = 99;
        for (int r = 1; r <= c.rounds; ++r) {
          auto state = init_round(c, r);
          const auto initial = state.population;
          std::vector<int> first_members;
          while (state.t <= c.t_max) {
            const auto before = state.population;
            const auto rec = step(state, c);
            ledger.expect("normalized performance in (0,1]",
                          rec.normalized_performance > 0.0 && rec.normalized_performance <= 1.0);
            ledger.expect("auction exactly on schedule", rec.reorganized == reorganization_due(rec.t, tau));
            ledger.expect("one member per area", rec.members.size() == 3);
            if (rec.t == 1) first_members = rec.members;
            if (tau == 0) ledger.expect("tau = 0 membership constant", rec.members == first_members);
            for (int s = 0; s < 3; ++s) {
              const auto& m = state.population[static_cast<std::size_t>(rec.members[static_cast<std::size_t>(s)])];
              ledger.expect("members sit in their area", m.area.index == s);
              ledger.expect("strategy bits = member choice", partial_of(rec.strategy, Area{s}) == m.current_choice);
            }
            for (std::size_t a = 0; a < state.population.size(); ++a) {
              const auto& now = state.population[a];
              ledger.expect("repertoire never empty", now.repertoire.size() >= 1);
              if (now.current_choice) ledger.expect("current choice is known", now.repertoire.contains(*now.current_choice));
              now.repertoire.for_each([&](PartialSolution s) {
                if (before[a].repertoire.contains(s)) return;
                bool adjacent = false;
                before[a].repertoire.for_each([&](PartialSolution b) { adjacent = adjacent || hamming(s, b) == 1; });
                ledger.expect("learned solutions are Hamming-1 neighbours", adjacent);
              });
              if (p == 0.0) ledger.expect("p = 0 repertoire constant", now.repertoire == initial[a].repertoire);
            }
          }
        }
      }
    }
  }

  // auction order statistics on random bids
  Rng rng(5);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<Bid> bids;
    const auto count = 1 + uniform_index(rng, 8);
    for (std::uint64_t i = 0; i < count; ++i)
      bids.push_back({static_cast<int>(i), 0, static_cast<double>(uniform_index(rng, 6)) / 5.0});
    const auto out = run_area_auction(bids, rng);
    std::vector<double> amounts;
    for (const auto& b : bids) amounts.push_back(b.amount);
    std::sort(amounts.rbegin(), amounts.rend());
    ledger.expect("winner holds the top bid", bids[static_cast<std::size_t>(out.winner_id)].amount == amounts[0]);
    ledger.expect("clearing price is the second-order statistic",
                  out.clearing_price == (amounts.size() > 1 ? amounts[1] : amounts[0]) &&
                      out.clearing_price <= out.winning_bid);
  }

  // argmax invariance under positive scaling, expectation = realization under stasis
  for (int trial = 0; trial < 200; ++trial) {
    Rng gen(1000 + static_cast<std::uint64_t>(trial));
    const auto l = generate_landscape(build_interaction_matrix(Structure::full, 11), gen);
    const double factor = 0.25 + 4.0 * uniform01(gen);
    const auto scaled = l.scaled(factor);
    std::vector<Agent> pop;
    for (int s = 0; s < 3; ++s)
      for (int j = 0; j < 3; ++j) {
        Agent a{static_cast<int>(pop.size()), Area{s}, {}, {}};
        for (int m = 0; m < 4; ++m) a.repertoire.insert(PartialSolution(static_cast<unsigned>(uniform_index(gen, 16))));
        pop.push_back(a);
      }
    const Strategy prev(static_cast<std::uint32_t>(uniform_index(gen, 4096)), 12);
    Rng ra(trial), rb(trial);
    ledger.expect("coalition winners invariant to positive scaling",
                  form_coalition(pop, l, prev, w, ra, 1).coalition.members ==
                      form_coalition(pop, scaled, prev, w, rb, 1).coalition.members);
    for (auto agent : pop) {
      auto copy = agent;
      const auto choice = choose_solution(agent, l, prev, w);
      ledger.expect("choice invariant to positive scaling", choice == choose_solution(copy, scaled, prev, w));
      ledger.expect("expected = realized utility under residual stasis",
                    expected_utility(agent, l, choice, prev, w) ==
                        realized_utility(agent, l, hybrid_strategy(agent.area, choice, prev), w));
    }
  }

  long total_checks = 0;
  long total_violations = 0;
  std::string failures;
  for (const auto& [what, n] : ledger.checks) {
    total_checks += n;
    const long bad = ledger.violations.count(what) ? ledger.violations.at(what) : 0;
    total_violations += bad;
    if (bad) failures += " [" + what + ": " + std::to_string(bad) + "]";
  }
  report("invariant suite", total_violations == 0,
         std::to_string(ledger.checks.size()) + " properties, " + std::to_string(total_checks) + " checks, " +
             std::to_string(total_violations) + " violations" + failures);
}

// ---------------------------------------------------------------------------

DistanceTable distances_from(const std::vector<ScenarioSummary>& rows) {
  DistanceTable t;
  for (const auto& r : rows) t[r.scenario_id].push_back(r.distance);
  return t;
}

void print_grid(const DistanceTable& d, std::size_t seed_index) {
  std::cout << "  D at master seed " << kSeeds[seed_index] << " (rows p/tau; columns K3c K3s K5c K5s K11)\n";
  for (double p : {0.0, 0.2, 0.5})
    for (int tau : {0, 10, 1}) {
      std::cout << "    " << std::left << std::setw(14) << ("p=" + format_number(p) + " tau=" + std::to_string(tau))
                << std::right;
      for (auto [k, s] : std::vector<std::pair<int, std::string>>{
               {3, "concentrated"}, {3, "scattered"}, {5, "concentrated"}, {5, "scattered"}, {11, "full"}})
        std::cout << "  " << std::setw(6) << fmt(d.at(id(k, s, p, tau))[seed_index]);
      std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
  fs::path out = fs::temp_directory_path() / "nkc_acceptance";
  unsigned jobs = std::max(4u, std::thread::hardware_concurrency());
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--out") out = argv[i + 1];
    else if (flag == "--jobs") jobs = static_cast<unsigned>(std::atoi(argv[i + 1]));
  }
  fs::remove_all(out);
  std::cout << "acceptance: R = " << kRounds << ", T = " << kSteps << ", seeds 1-5, jobs = " << jobs << "\n";

  check_oracle();
  check_invariants();

  // Full desk-scale sweep at the default seed: timed, then rerun serially and in parallel.
  SweepOptions serial;
  serial.out_dir = out / "seed1_serial";
  serial.jobs = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto base_rows = run_sweep(desk_spec(kDefaultSeed), serial);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report("runtime", elapsed.count() < kRuntimeLimitSeconds,
         "45-scenario desk sweep took " + fmt(elapsed.count(), 1) + " s on one thread (limit " +
             fmt(kRuntimeLimitSeconds, 0) + " s)");

  SweepOptions rerun = serial;
  rerun.out_dir = out / "seed1_rerun";
  run_sweep(desk_spec(kDefaultSeed), rerun);
  SweepOptions parallel = serial;
  parallel.out_dir = out / "seed1_parallel";
  parallel.jobs = jobs;
  run_sweep(desk_spec(kDefaultSeed), parallel);
  const auto base_summary = slurp(serial.out_dir / "summary.csv");
  const bool rerun_same = base_summary == slurp(rerun.out_dir / "summary.csv");
  const bool parallel_same = base_summary == slurp(parallel.out_dir / "summary.csv");
  report("determinism", rerun_same && parallel_same && !base_summary.empty(),
         std::string("rerun ") + (rerun_same ? "byte-identical" : "DIFFERS") + ", serial vs " +
             std::to_string(jobs) + " threads " + (parallel_same ? "byte-identical" : "DIFFERS"));

  DistanceTable d = distances_from(base_rows);
  for (std::size_t s = 1; s < kSeeds.size(); ++s) {
    SweepOptions o;
    o.out_dir = out / ("seed" + std::to_string(kSeeds[s]));
    o.jobs = jobs;
    for (const auto& r : run_sweep(desk_spec(kSeeds[s]), o)) d[r.scenario_id].push_back(r.distance);
  }
  print_grid(d, 0);
  const auto at_default = [&](const std::string& key) { return d.at(key)[0]; };

  // Complexity ordering over 5 seeds: each gap > 2 standard errors of the paired difference.
  {
    bool ok = true;
    std::string worst;
    double worst_ratio = 1e9;
    for (double p : {0.0, 0.2, 0.5})
      for (int tau : {0, 1, 10}) {
        const auto& low = d.at(id(3, "concentrated", p, tau));
        const auto& mid = d.at(id(5, "concentrated", p, tau));
        const auto& high = d.at(id(11, "full", p, tau));
        for (const auto& gap : {minus(mid, low), minus(high, mid)}) {
          const double g = mean(gap);
          const double se = standard_error(gap);
          const double ratio = se > 0.0 ? g / se : (g > 0.0 ? 1e9 : -1e9);
          if (!(g > 2.0 * se && g > 0.0)) ok = false;
          if (ratio < worst_ratio) {
            worst_ratio = ratio;
            worst = "p=" + format_number(p) + " tau=" + std::to_string(tau) + " gap " + fmt(g) + " vs 2SE " + fmt(2 * se);
          }
        }
      }
    report("complexity ordering", ok, "D(K3c) < D(K5c) < D(K11) for all 9 (p,tau); tightest: " + worst);
  }

  // Magnitude band at p = 0.2, default seed.
  {
    bool ok = true;
    std::string detail;
    for (int tau : {0, 1, 10}) {
      const double low = at_default(id(3, "concentrated", 0.2, tau));
      const double high = at_default(id(11, "full", 0.2, tau));
      ok = ok && low < 12.0 && high > 25.0;
      detail += " tau=" + std::to_string(tau) + ": " + fmt(low) + " / " + fmt(high) + ";";
    }
    report("magnitude band", ok, "D(K3c) < 12 and D(K11) > 25 at p=0.2:" + detail);
  }

  // Structure effect and its attenuation at p = 0.2, tau = 10.
  {
    const double c3 = at_default(id(3, "concentrated", 0.2, 10));
    const double s3 = at_default(id(3, "scattered", 0.2, 10));
    const double c5 = at_default(id(5, "concentrated", 0.2, 10));
    const double s5 = at_default(id(5, "scattered", 0.2, 10));
    report("structure effect", s3 > c3 && s5 > c5 && (s3 - c3) > (s5 - c5),
           "K3 " + fmt(c3) + " -> " + fmt(s3) + " (gap " + fmt(s3 - c3) + "), K5 " + fmt(c5) + " -> " + fmt(s5) +
               " (gap " + fmt(s5 - c5) + ")");
  }

  // Learning effect.
  {
    const double k3_p0 = at_default(id(3, "concentrated", 0.0, 10));
    const double k3_p2 = at_default(id(3, "concentrated", 0.2, 10));
    const double k11_p0 = at_default(id(11, "full", 0.0, 1));
    const double k11_p2 = at_default(id(11, "full", 0.2, 1));
    const double reduction = (k11_p0 - k11_p2) / k11_p0;
    const bool low_ok = k3_p2 < 0.5 * k3_p0;
    const bool high_ok = k11_p2 < k11_p0 && reduction < 0.25;
    report("learning effect", low_ok && high_ok,
           "K3c tau=10: D(p=0.2) = " + fmt(k3_p2) + " vs 0.5 * D(p=0) = " + fmt(0.5 * k3_p0) + (low_ok ? " ok" : " FAILS") +
               "; K11 tau=1: " + fmt(k11_p0) + " -> " + fmt(k11_p2) + ", reduction " + fmt(100.0 * reduction, 1) +
               "% (must be in (0, 25%))" + (high_ok ? " ok" : " FAILS"));
  }

  // Stability x learning interaction at K = 11, majority over 5 seeds.
  {
    const auto& p0_tau0 = d.at(id(11, "full", 0.0, 0));
    const auto& p0_tau1 = d.at(id(11, "full", 0.0, 1));
    const auto& p5_tau0 = d.at(id(11, "full", 0.5, 0));
    const auto& p5_tau1 = d.at(id(11, "full", 0.5, 1));
    int reorg_wins = 0;
    int stable_wins = 0;
    for (std::size_t s = 0; s < kSeeds.size(); ++s) {
      reorg_wins += p0_tau1[s] < p0_tau0[s];
      stable_wins += p5_tau0[s] <= p5_tau1[s];
    }
    const int majority = static_cast<int>(kSeeds.size()) / 2 + 1;
    const bool reorg_ok = reorg_wins >= majority;
    const bool stable_ok = stable_wins >= majority;
    report("stability x learning", reorg_ok && stable_ok,
           "K11 p=0: tau=1 < tau=0 in " + std::to_string(reorg_wins) + "/5 seeds (mean " + fmt(mean(p0_tau1)) + " vs " +
               fmt(mean(p0_tau0)) + ")" + (reorg_ok ? " ok" : " FAILS") + "; p=0.5: tau=0 <= tau=1 in " +
               std::to_string(stable_wins) + "/5 seeds (mean " + fmt(mean(p5_tau0)) + " vs " + fmt(mean(p5_tau1)) + ")" +
               (stable_ok ? " ok" : " FAILS"));
  }

  int failed = 0;
  for (const auto& o : g_outcomes) failed += !o.pass;
  std::cout << "acceptance: " << g_outcomes.size() - static_cast<std::size_t>(failed) << "/" << g_outcomes.size()
            << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
