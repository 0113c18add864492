// Runs one round of one scenario and prints the coalition's trajectory.
//
//   single_round [K] [structure] [p] [tau] [seed]

#include <cstdlib>
#include <iostream>
#include <string>

#include "nkc/nkc.hpp"

int main(int argc, char** argv) {
  nkc::ScenarioConfig config;
  config.k = argc > 1 ? std::atoi(argv[1]) : 3;
  config.structure = argc > 2 ? nkc::parse_structure(argv[2]) : nkc::Structure::concentrated;
  config.p = argc > 3 ? std::atof(argv[3]) : 0.2;
  config.tau = argc > 4 ? std::atoll(argv[4]) : 10;
  config.master_seed = argc > 5 ? std::strtoull(argv[5], nullptr, 10) : 1;
  config.t_max = 30;

  nkc::RoundState state = nkc::init_round(config, 1);
  std::cout << config.scenario_id() << "  global max " << state.landscape.global_max() << " at "
            << state.landscape.global_max_argmax().to_string() << "\n";
  std::cout << "start " << state.previous.to_string() << "\n";
  while (state.t <= config.t_max) {
    const auto rec = nkc::step(state, config);
    std::cout << (rec.reorganized ? '*' : ' ') << " t=" << rec.t << "  " << rec.strategy.to_string() << "  C="
              << nkc::format_fixed(rec.raw_performance, 4) << "  C/max=" << nkc::format_fixed(rec.normalized_performance, 4)
              << "  members";
    for (int id : rec.members) std::cout << ' ' << id;
    std::cout << '\n';
  }
}
