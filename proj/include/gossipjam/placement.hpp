#pragma once

// Jammer placements on rings and fully connected networks, and exhaustive
// enumeration of small link configurations.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gossipjam/network.hpp"

namespace gossipjam {

/// Balanced cuts: segment sizes differ by at most one, larger ones first.
JammerSet ring_equidistant(int n, int n_tilde);

/// Cuts (1,2), (2,3), ..., (n_tilde, n_tilde+1).
JammerSet ring_adjacent(int n, int n_tilde);

/// n_tilde distinct ring links, uniform over subsets, fixed by the seed.
JammerSet ring_random(int n, int n_tilde, std::uint64_t seed);

/// Survivors of a greedy consolidation: a k-clique on {1..k} plus c links
/// from node k+1 to {1..c}.
struct GreedyPlan {
  int n = 0;
  int k = 0;
  int c = 0;
  int steps = 0;
};

std::int64_t choose2(std::int64_t m);

GreedyPlan greedy_plan(int n, std::int64_t n_tilde);
std::pair<GreedyPlan, JammerSet> fc_greedy(int n, std::int64_t n_tilde);

/// Surviving pairs of a greedy plan.
std::vector<NodePair> greedy_links(const GreedyPlan& plan);

struct ClusterPlan {
  int m_bar = 0;
  int k_bar = 0;
};

/// m_bar disjoint k_bar-cliques on {1..k_bar}, {k_bar+1..2 k_bar}, ...
JammerSet fc_clusters(int n, int k_bar, int m_bar);
std::vector<NodePair> cluster_links(int n, int k_bar, int m_bar);

/// Every set of `n_bar` pairs among n nodes in lexicographic order of pair
/// indices. Pair index order is (1,2), (1,3), ..., (1,n), (2,3), ...
class ConfigEnumerator {
 public:
  static constexpr int max_nodes = 8;

  ConfigEnumerator(int n, int n_bar);

  /// Number of configurations, C(C(n,2), n_bar).
  std::uint64_t count() const { return count_; }
  /// Next configuration, or nullopt when exhausted.
  std::optional<std::vector<NodePair>> next();

 private:
  std::vector<NodePair> pairs_;
  std::vector<int> index_;
  std::uint64_t count_ = 0;
  bool done_ = false;
};

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace gossipjam
