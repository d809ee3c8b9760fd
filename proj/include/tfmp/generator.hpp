// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "tfmp/instance.hpp"

namespace tfmp {

struct GeneratorParams {
  int flights = 6;
  int sectors = 6;
  int horizon = 12;
  double continued_fraction = 0.2;  // p: floor(p * flights) continuation pairs
  double capacity_tightness = 1.0;  // c in (0, 1]
  int max_ground_hold = 2;
  int max_air_hold = 1;
  int allow_early = 0;
  int max_transit = 2;
  int min_path_length = 2;
  int max_path_length = 4;
  // Chance that a non-ring sector pair is adjacent.
  double extra_edge_probability = 0.3;
  int retry_budget = 200;
};

// Random instance with windows already derived. Paths follow a random sector
// adjacency (a ring plus extra edges), schedules are consistent with transit
// times, and each capacity is ceil(c * peak zero-delay demand) for that
// (sector, kind), constant over time. Deterministic in (params, seed).
// Throws std::invalid_argument for out-of-range params and GenerationError
// when the retry budget is exhausted.
Instance generate_instance(const GeneratorParams& params, std::uint64_t seed);

}  // namespace tfmp
