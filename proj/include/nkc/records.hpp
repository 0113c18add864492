#pragma once

#include <vector>

#include "nkc/coalition.hpp"
#include "nkc/landscape.hpp"

namespace nkc {

struct TimeStepRecord {
  int t = 0;
  Strategy strategy;
  double raw_performance = 0.0;
  double normalized_performance = 0.0;  // raw / global max of the round's landscape
  std::vector<int> members;              // by area
  std::vector<double> utilities;         // realized utility of members[s]
  bool reorganized = false;              // an auction fired this step
  std::vector<AuctionOutcome> auctions;  // only kept when requested
};

struct RoundResult {
  int round_index = 0;
  double global_max = 0.0;
  std::vector<TimeStepRecord> records;
};

}  // namespace nkc
