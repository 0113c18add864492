#pragma once

#include <vector>

#include "nkc/landscape.hpp"
#include "oracle/brute_force.hpp"

namespace test_support {

inline oracle::Deps deps_of(const nkc::InteractionMatrix& m) {
  oracle::Deps deps;
  for (int i = 0; i < m.n(); ++i) {
    auto row = m.deps(i);
    deps.emplace_back(row.begin(), row.end());
  }
  return deps;
}

inline oracle::Tables tables_of(const nkc::Landscape& l) {
  oracle::Tables tables;
  for (int i = 0; i < l.n(); ++i) {
    auto t = l.table(i);
    tables.emplace_back(t.begin(), t.end());
  }
  return tables;
}

inline nkc::Landscape random_landscape(nkc::Structure s, int k, std::uint64_t seed) {
  nkc::Rng rng(seed);
  return nkc::generate_landscape(nkc::build_interaction_matrix(s, k), rng);
}

inline nkc::Strategy random_strategy(nkc::Rng& rng, int n = 12) {
  return nkc::Strategy(static_cast<std::uint32_t>(nkc::uniform_index(rng, 1u << n)), n);
}

}  // namespace test_support
