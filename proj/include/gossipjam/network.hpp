#pragma once

// Gossip network model: a source updating n nodes, plus directed inter-node
// update rates. Node ids are 1-based throughout the public API.

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace gossipjam {

using NodeId = int;

/// Unordered node pair, stored with lo < hi.
struct NodePair {
  NodeId lo = 0;
  NodeId hi = 0;

  static NodePair of(NodeId a, NodeId b);
  auto operator<=>(const NodePair&) const = default;
};

/// Directed rates on one undirected link: forward is lo -> hi.
struct LinkRates {
  double forward = 0.0;
  double backward = 0.0;

  bool operator==(const LinkRates&) const = default;
};

/// Model normalization: lambda is a node's total gossip rate (and the
/// source's total rate over all nodes), lambda_s the source self-update rate.
struct Rates {
  double lambda = 1.0;
  double lambda_s = 1.0;
};

class GossipNetwork {
 public:
  GossipNetwork(int n, double lambda_s, std::vector<double> source_rates,
                std::map<NodePair, LinkRates> links = {});

  int size() const { return n_; }
  double lambda_s() const { return lambda_s_; }
  double source_rate(NodeId j) const { return source_rates_.at(j - 1); }
  std::span<const double> source_rates() const { return source_rates_; }
  const std::map<NodePair, LinkRates>& links() const { return links_; }

  /// Rate at which `from` pushes its version to `to`; 0 when no link.
  double rate(NodeId from, NodeId to) const;
  bool has_link(NodeId a, NodeId b) const;

  /// Sum of a node's outgoing inter-node rates.
  double out_rate(NodeId i) const;

  /// Copy with one link added or overwritten.
  GossipNetwork with_link(NodeId i, NodeId j, double rate_ij, double rate_ji) const;

  bool operator==(const GossipNetwork&) const = default;

 private:
  int n_;
  double lambda_s_;
  std::vector<double> source_rates_;
  std::map<NodePair, LinkRates> links_;
};

/// Set of cut inter-node links. Duplicates collapse: two jammers on one link
/// count as one.
class JammerSet {
 public:
  JammerSet() = default;
  explicit JammerSet(std::span<const NodePair> cuts);
  JammerSet(std::initializer_list<std::pair<NodeId, NodeId>> cuts);

  void add(NodeId a, NodeId b);
  std::size_t size() const { return cuts_.size(); }
  bool empty() const { return cuts_.empty(); }
  bool contains(NodeId a, NodeId b) const;
  std::vector<NodePair> cuts() const { return {cuts_.begin(), cuts_.end()}; }

  bool operator==(const JammerSet&) const = default;

 private:
  std::set<NodePair> cuts_;
};

enum class Shape { isolated, path, cycle, clique, star, general };

std::string to_string(Shape shape);

/// One connected component of the undirected support graph. `nodes` is in
/// traversal order for paths (endpoint to endpoint) and cycles; hub first
/// for stars; ascending otherwise.
struct Component {
  std::vector<NodeId> nodes;
  Shape shape = Shape::general;
  std::size_t link_count = 0;
};

struct ComponentDecomposition {
  std::vector<Component> components;

  std::size_t count(Shape shape) const;
};

enum class FcDenominator { n, n_minus_1 };

GossipNetwork build_ring(int n, Rates rates = {});
GossipNetwork build_fully_connected(int n, Rates rates = {},
                                    FcDenominator denominator = FcDenominator::n);

/// Nodes 1..n0 form a line with rate lambda/2 per direction; nodes n0+1..n
/// are isolated. Every node keeps source rate lambda/n.
GossipNetwork build_line(int n0, int n, Rates rates = {});

/// Hub node 1 linked to leaves 2..d+1 at rate lambda/n; rest isolated.
GossipNetwork build_star(int d, int n, Rates rates = {});

/// Clique on nodes 1..k at rate lambda/n; rest isolated.
GossipNetwork build_mini_fc(int k, int n, Rates rates = {});

/// Arbitrary symmetric graph at a single link rate, source rates lambda/n.
GossipNetwork build_from_pairs(int n, std::span<const NodePair> pairs, double link_rate,
                               Rates rates = {});

/// Zeroes both directions of every cut pair. Cuts naming pairs without a
/// link are wasted jammers: reported through `diagnostics` (when given),
/// never an error. Cuts naming nodes outside [1, n] are an error.
GossipNetwork apply_jammers(const GossipNetwork& net, const JammerSet& jam,
                            std::vector<std::string>* diagnostics = nullptr);

ComponentDecomposition decompose(const GossipNetwork& net);

/// Nodes whose ids appear in `nodes`, with links restricted to them.
/// Local node i corresponds to nodes[i-1].
GossipNetwork induced_subnetwork(const GossipNetwork& net, std::span<const NodeId> nodes);

enum class RandomShape { path, cycle, star, clique, general };

struct RandomGraph {
  GossipNetwork network;
  RandomShape shape;
};

/// Random connected graph with min_nodes..max_nodes nodes. Path, cycle and
/// general shapes draw independent source rates and per-direction link
/// rates; star and clique use uniform rates so their symmetric solvers apply.
RandomGraph random_connected_graph(std::mt19937_64& rng, int min_nodes, int max_nodes,
                                   Rates rates = {});

}  // namespace gossipjam
