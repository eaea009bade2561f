#pragma once

// Exact expected version ages. Everything here is a pure function of its
// inputs; the subset recursion allocates its table per call.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gossipjam/network.hpp"

namespace gossipjam {

struct AgeReport {
  std::vector<double> per_node;  // index i holds node i+1
  double total = 0.0;
  double average = 0.0;

  static AgeReport from(std::vector<double> per_node);
};

struct SolverOptions {
  int subset_cap = 20;
};

/// Ages of every node subset of one component, indexed by a bitmask over
/// `nodes` (bit b stands for nodes[b]).
class SubsetAgeTable {
 public:
  SubsetAgeTable(std::vector<NodeId> nodes, std::vector<double> ages)
      : nodes_(std::move(nodes)), ages_(std::move(ages)) {}

  const std::vector<NodeId>& nodes() const { return nodes_; }
  double at(std::uint32_t mask) const { return ages_.at(mask); }
  /// Age of a set given by global node ids, all inside this component.
  double age_of(std::span<const NodeId> members) const;
  std::size_t size() const { return ages_.size(); }

 private:
  std::vector<NodeId> nodes_;
  std::vector<double> ages_;
};

SubsetAgeTable subset_age_table(const GossipNetwork& net, std::span<const NodeId> component,
                                int cap = 20);

/// Exact ages by the subset recursion, component by component.
AgeReport solve_subset_dp(const GossipNetwork& net, const SolverOptions& opts = {});

/// Exact ages using the cheapest applicable solver per component: closed
/// recursions for isolated nodes, paths, cycles, uniform cliques and uniform
/// stars; the subset recursion otherwise.
AgeReport solve(const GossipNetwork& net, const SolverOptions& opts = {});

/// Ages of a component's nodes (in `comp.nodes` order) from its shape
/// specific solver, or nullopt when no specialized solver applies.
std::optional<std::vector<double>> specialized_ages(const GossipNetwork& net, const Component& comp);

/// Path in traversal order `order`, arbitrary per-direction rates.
std::vector<double> path_ages(const GossipNetwork& net, std::span<const NodeId> order);

/// Cycle in traversal order `order`, arbitrary per-direction rates.
std::vector<double> cycle_ages(const GossipNetwork& net, std::span<const NodeId> order);

/// Line of n0 nodes inside an n-node system (lambda/2 per direction, source
/// lambda/n); returns the n0 ages from one end to the other.
std::vector<double> solve_path_interval_dp(int n0, int n, Rates rates = {});

double ring_node_age(int n0, int n, Rates rates = {});
double line_corner_age(int n0, int n, Rates rates = {});

/// Ring ages for n0 = 1..max_ring at several system sizes at once.
class RingAgeTable {
 public:
  RingAgeTable(std::vector<int> system_sizes, int max_ring, Rates rates = {});

  /// Age of a node in a size-n0 ring in the system of size system_sizes[b].
  double age(int n0, std::size_t b) const;
  int max_ring() const { return max_ring_; }

 private:
  std::size_t batch_;
  int max_ring_;
  double scale_;
  std::vector<double> table_;
};

/// Hub age of a d-star at link rate lambda/n.
double star_node_age(int d, int n, Rates rates = {});

struct StarAges {
  double hub = 0.0;
  double leaf = 0.0;
};

/// Hub and leaf ages of a star with `leaves` leaves, per-direction link
/// rate `link_rate` and per-node source rate `source_rate`.
StarAges star_ages(int leaves, double link_rate, double source_rate, double lambda_s);

/// Per-node age of a clique of m nodes with uniform link and source rates.
double clique_node_age(int m, double link_rate, double source_rate, double lambda_s);

/// Age reduction R_d of a node gaining d links, and its coefficient
/// R_d / (lambda_s n / lambda), which does not depend on n.
double age_reduction_Rd(int d, int n, Rates rates = {});
double rd_coefficient(int d);

/// Rounds down to two decimals, absorbing representation error just below
/// a boundary.
double floor2(double x);

struct MiniFcAge {
  double per_node = 0.0;
  double total = 0.0;
};

MiniFcAge mini_fc_age(int k, int n, Rates rates = {});

struct ProductBounds {
  double lower = 0.0;
  double upper = 0.0;
  double product = 0.0;  // prod_{k=1}^{j} 1/(1 + k/n)
};

/// Exponential envelope of prod_{k=1}^{j} 1/(1 + k/n). Requires 1 <= j <= n.
ProductBounds exp_product_bounds(int j, int n);

struct ScalingBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Envelope of the average age of a ring of n nodes with c n^alpha jammers,
/// lambda_s = lambda = 1.
ScalingBounds ring_scaling_bounds(double n, double alpha, double c);

enum class RingModel { line, miniring };

/// Sizes of the path segments a cut set leaves on an n-ring, in ring order
/// starting after the lowest cut. Empty when nothing is cut.
std::vector<int> ring_segments(int n, const JammerSet& jam);

/// Ages of a jammed n-ring, each segment treated as an exact line or closed
/// into a mini-ring.
AgeReport dismembered_ring_age(int n, const JammerSet& jam, RingModel model, Rates rates = {});

}  // namespace gossipjam
