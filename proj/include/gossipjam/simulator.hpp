#pragma once

// Event-driven Monte Carlo of the version-age gossip process.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gossipjam/network.hpp"

namespace gossipjam {

struct SimConfig {
  double horizon = 1e5;
  std::optional<double> warmup;  // defaults to 5% of the horizon
  std::uint64_t seed = 1;
  int replications = 10;
  int threads = 0;  // 0: one per hardware thread, capped by replications

  double warmup_time() const { return warmup.value_or(0.05 * horizon); }
};

struct SimResult {
  std::vector<double> per_node_time_avg;  // index i holds node i+1
  std::vector<double> std_error;          // NaN with a single replication
  double average = 0.0;
  double average_std_error = 0.0;
  std::uint64_t events = 0;  // over all replications, warmup included
  int replications = 0;
};

struct SetAgeEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

SimResult simulate(const GossipNetwork& net, const SimConfig& cfg);

/// Time average of min_{i in S} of the instantaneous ages.
SetAgeEstimate simulate_set_age(const GossipNetwork& net, std::span<const NodeId> set,
                                const SimConfig& cfg);

}  // namespace gossipjam
