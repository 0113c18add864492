// nkc-sim: command line driver for coalition sweeps.
//
//   nkc-sim sweep [--config FILE] [--seed N] [--rounds R] [--out DIR] [--jobs J] [--raw-dump] [--auction-log]
//   nkc-sim default-config
//   nkc-sim matrix --structure concentrated --k 5

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "nkc/nkc.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kOutput = 3, kInternal = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator of self-organizing coalitions on NK landscapes"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run a scenario grid and write summary/series CSV files");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> rounds;
  std::string out_dir = "results";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool raw_dump = false;
  bool auction_log = false;
  bool quiet = false;
  sweep->add_option("-c,--config", config_path, "config file (default: built-in 45-scenario grid)");
  sweep->add_option("-s,--seed", seed, "override master_seed");
  sweep->add_option("-r,--rounds", rounds, "override R")->check(CLI::PositiveNumber);
  sweep->add_option("-o,--out", out_dir, "output directory");
  sweep->add_option("-j,--jobs", jobs, "worker threads per scenario")->check(CLI::PositiveNumber);
  sweep->add_flag("--raw-dump", raw_dump, "write raw_<scenario>.csv per-step dumps");
  sweep->add_flag("--auction-log", auction_log, "write auction_log_<scenario>.csv");
  sweep->add_flag("-q,--quiet", quiet, "no progress output");

  app.add_subcommand("default-config", "print the built-in configuration");

  auto* matrix = app.add_subcommand("matrix", "print a canonical interaction matrix");
  std::string structure = "full";
  int k = 11;
  matrix->add_option("--structure", structure, "concentrated, scattered or full");
  matrix->add_option("--k", k, "interdependencies per decision");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("default-config")) {
      std::cout << nkc::default_config_text();
      return kOk;
    }
    if (app.got_subcommand("matrix")) {
      std::cout << nkc::build_interaction_matrix(nkc::parse_structure(structure), k).to_text();
      return kOk;
    }

    nkc::SweepSpec spec = config_path.empty() ? nkc::SweepSpec{} : nkc::load_sweep_spec(config_path);
    if (seed) spec.master_seed = *seed;
    if (rounds) spec.rounds = *rounds;

    nkc::SweepOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;
    options.raw_dump = raw_dump;
    options.auction_log = auction_log;
    if (!quiet) {
      options.on_scenario = [](const nkc::ScenarioSummary& s, std::size_t i, std::size_t total) {
        std::cerr << "[" << i + 1 << "/" << total << "] " << s.scenario_id << "  D = " << nkc::format_fixed(s.distance, 4)
                  << '\n';
      };
    }
    const auto start = std::chrono::steady_clock::now();
    const auto rows = nkc::run_sweep(spec, options);
    if (!quiet) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      std::cerr << rows.size() << " scenarios in " << nkc::format_fixed(elapsed.count(), 1) << " s -> "
                << out_dir << "/summary.csv\n";
    }
    return kOk;
  } catch (const nkc::ParseError& e) {
    std::cerr << "config error: " << (config_path.empty() ? "" : config_path + ": ") << e.what() << '\n';
    return kConfig;
  } catch (const nkc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const nkc::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kOutput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
