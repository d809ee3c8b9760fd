// SPDX-License-Identifier: Apache-2.0

#include "tfmp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "tfmp/errors.hpp"

namespace tfmp {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void check(const GeneratorParams& p) {
  auto bad = [](const std::string& what) { throw std::invalid_argument("generator: " + what); };
  if (p.flights < 1) bad("flights must be >= 1");
  if (p.sectors < 1) bad("sectors must be >= 1");
  if (p.horizon < 1) bad("horizon must be >= 1");
  if (!(p.continued_fraction >= 0.0 && p.continued_fraction <= 1.0)) {
    bad("continued_fraction must lie in [0, 1]");
  }
  if (!(p.capacity_tightness > 0.0 && p.capacity_tightness <= 1.0)) {
    bad("capacity_tightness must lie in (0, 1]");
  }
  if (p.max_ground_hold < 0 || p.max_air_hold < 0 || p.allow_early < 0) {
    bad("hold allowances must be >= 0");
  }
  if (p.max_transit < 1) bad("max_transit must be >= 1");
  if (p.min_path_length < 2 || p.max_path_length < p.min_path_length) {
    bad("path lengths must satisfy 2 <= min <= max");
  }
}

std::vector<std::vector<int>> adjacency(const GeneratorParams& p, Rng& rng) {
  const int m = p.sectors;
  std::vector<std::vector<int>> adj(m);
  auto link = [&](int a, int b) {
    if (a == b || std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) return;
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int i = 0; i < m; ++i) link(i, (i + 1) % m);
  std::bernoulli_distribution extra(p.extra_edge_probability);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 2; b < m; ++b) {
      if (extra(rng)) link(a, b);
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

// Simple random walk from `start` without revisiting sectors.
std::vector<int> random_path(const std::vector<std::vector<int>>& adj, int start, int length,
                             Rng& rng) {
  std::vector<int> path{start};
  while (static_cast<int>(path.size()) < length) {
    std::vector<int> options;
    for (int next : adj[path.back()]) {
      if (std::find(path.begin(), path.end(), next) == path.end()) options.push_back(next);
    }
    if (options.empty()) break;
    path.push_back(options[uniform(rng, 0, static_cast<int>(options.size()) - 1)]);
  }
  return path;
}

std::optional<Instance> attempt(const GeneratorParams& p, Rng& rng) {
  const int n = p.flights;
  const int pairs = static_cast<int>(std::floor(p.continued_fraction * n));
  if (pairs > n - 1) return std::nullopt;

  Instance inst;
  inst.horizon = p.horizon;
  inst.window_policy = {p.max_ground_hold, p.max_air_hold, p.allow_early};
  for (int s = 0; s < p.sectors; ++s) inst.sectors.push_back("S" + std::to_string(s + 1));
  const auto adj = adjacency(p, rng);

  // Choose which flights continue an earlier one.
  std::vector<int> later(n - 1);
  std::iota(later.begin(), later.end(), 1);
  std::shuffle(later.begin(), later.end(), rng);
  std::vector<bool> outgoing(n, false);
  for (int k = 0; k < pairs; ++k) outgoing[later[k]] = true;

  // Pair every outgoing flight with an earlier, not yet used incoming flight.
  // Among the candidates, only the shallowest chains are eligible.
  std::vector<int> incoming_of(n, -1);
  std::vector<int> depth(n, 0);
  std::vector<bool> has_successor(n, false);
  for (int i = 1; i < n; ++i) {
    if (!outgoing[i]) continue;
    std::vector<int> candidates;
    int shallowest = n;
    for (int j = 0; j < i; ++j) {
      if (!has_successor[j]) shallowest = std::min(shallowest, depth[j]);
    }
    for (int j = 0; j < i; ++j) {
      if (!has_successor[j] && depth[j] == shallowest) candidates.push_back(j);
    }
    if (candidates.empty()) return std::nullopt;
    const int j = candidates[uniform(rng, 0, static_cast<int>(candidates.size()) - 1)];
    has_successor[j] = true;
    incoming_of[i] = j;
    depth[i] = depth[j] + 1;
  }

  std::vector<int> arrival_sector(n, 0);
  for (int i = 0; i < n; ++i) {
    Flight f;
    f.id = "F" + std::to_string(i + 1);
    f.turnaround = uniform(rng, 0, 1);
    f.ground_cost = 100.0 * uniform(rng, 1, 10);
    f.air_cost = f.ground_cost + 100.0 * uniform(rng, 1, 5);

    int start = uniform(rng, 0, p.sectors - 1);
    int earliest_departure = 1;
    std::optional<int> incoming;
    if (incoming_of[i] >= 0) {
      const int j = incoming_of[i];
      incoming = j;
      start = arrival_sector[j];
      earliest_departure = inst.flights[j].scheduled_arrival + inst.flights[j].turnaround;
    }

    const int length = uniform(rng, p.min_path_length, p.max_path_length);
    std::vector<int> path = random_path(adj, start, length, rng);
    if (static_cast<int>(path.size()) < p.min_path_length) return std::nullopt;
    std::vector<int> transit;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) transit.push_back(uniform(rng, 1, p.max_transit));
    int travel = std::accumulate(transit.begin(), transit.end(), 0);
    // Shorten the flight when the rest of the horizon is too short for it.
    while (travel > p.horizon - earliest_departure) {
      auto longest = std::max_element(transit.begin(), transit.end());
      if (*longest > 1) {
        --*longest;
        --travel;
      } else if (static_cast<int>(path.size()) > p.min_path_length) {
        path.pop_back();
        travel -= transit.back();
        transit.pop_back();
      } else {
        return std::nullopt;
      }
    }
    for (int s : path) f.path.push_back(inst.sectors[s]);
    f.transit_times = transit;

    const int latest_departure = p.horizon - travel;
    if (latest_departure < earliest_departure) return std::nullopt;
    if (incoming) {
      f.scheduled_departure =
          std::min(latest_departure, earliest_departure + uniform(rng, 0, 1));
    } else if (has_successor[i]) {
      // Chain heads leave early so that their successors still fit.
      f.scheduled_departure = uniform(rng, 1, std::max(1, latest_departure / 3));
    } else {
      f.scheduled_departure = uniform(rng, earliest_departure, latest_departure);
    }
    f.scheduled_arrival = f.scheduled_departure + travel;
    f.windows.assign(f.path.size(), std::nullopt);
    arrival_sector[i] = path.back();
    inst.flights.push_back(std::move(f));
    if (incoming) {
      inst.continuations.push_back({inst.flights[*incoming].id, inst.flights.back().id});
    }
  }

  // Peak zero-delay demand per (sector, kind).
  std::map<std::tuple<std::string, ResourceKind, int>, int> demand;
  for (const Flight& f : inst.flights) {
    ++demand[{f.departure_airport(), ResourceKind::kDeparture, f.scheduled_departure}];
    ++demand[{f.arrival_airport(), ResourceKind::kArrival, f.scheduled_arrival}];
    int t = f.scheduled_departure;
    for (std::size_t k = 0; k + 1 < f.path.size(); ++k) {
      for (int u = t; u < t + f.transit_times[k]; ++u) {
        ++demand[{f.path[k], ResourceKind::kSector, u}];
      }
      t += f.transit_times[k];
    }
  }
  std::map<std::pair<std::string, ResourceKind>, int> peak;
  for (const auto& [key, count] : demand) {
    int& v = peak[{std::get<0>(key), std::get<1>(key)}];
    v = std::max(v, count);
  }
  inst.capacities = CapacityProfile(p.horizon);
  for (const auto& [key, count] : peak) {
    const int cap = static_cast<int>(std::ceil(count * p.capacity_tightness - 1e-12));
    inst.capacities.set(key.first, key.second, 1, p.horizon, cap);
  }
  return inst;
}

}  // namespace

Instance generate_instance(const GeneratorParams& params, std::uint64_t seed) {
  check(params);
  if (params.sectors < params.min_path_length) {
    throw GenerationError("cannot build paths of length " +
                          std::to_string(params.min_path_length) + " over " +
                          std::to_string(params.sectors) + " sector(s)");
  }
  Rng rng(seed);
  for (int k = 0; k < params.retry_budget; ++k) {
    if (auto inst = attempt(params, rng)) {
      return validate_instance(derive_time_windows(std::move(*inst))).get();
    }
  }
  throw GenerationError("no instance with " +
                        std::to_string(static_cast<int>(
                            std::floor(params.continued_fraction * params.flights))) +
                        " airport-matching continuation pair(s) found after " +
                        std::to_string(params.retry_budget) + " attempts");
}

}  // namespace tfmp
