#include "gossipjam/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "gossipjam/error.hpp"
#include "gossipjam/random.hpp"

namespace gossipjam {

NodePair NodePair::of(NodeId a, NodeId b) {
  if (a == b) throw InvalidTopology("self-loop pair (" + std::to_string(a) + "," + std::to_string(a) + ")");
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

namespace {

void check_rate(double r, const char* what) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InputError(std::string("invalid ") + what + " rate");
}

}  // namespace

GossipNetwork::GossipNetwork(int n, double lambda_s, std::vector<double> source_rates,
                             std::map<NodePair, LinkRates> links)
    : n_(n), lambda_s_(lambda_s), source_rates_(std::move(source_rates)), links_(std::move(links)) {
  if (n_ < 1) throw InvalidTopology("network needs at least one node");
  check_rate(lambda_s_, "source self-update");
  if (static_cast<int>(source_rates_.size()) != n_)
    throw InputError("source_rates has " + std::to_string(source_rates_.size()) +
                     " entries for " + std::to_string(n_) + " nodes");
  for (double r : source_rates_) check_rate(r, "source");
  for (auto it = links_.begin(); it != links_.end();) {
    const auto& [pair, rates] = *it;
    if (pair.lo >= pair.hi || pair.lo < 1 || pair.hi > n_)
      throw InvalidTopology("link (" + std::to_string(pair.lo) + "," + std::to_string(pair.hi) +
                            ") outside [1," + std::to_string(n_) + "] or unnormalized");
    check_rate(rates.forward, "link");
    check_rate(rates.backward, "link");
    // zero-rate entries carry no information; keep the map canonical
    if (rates.forward == 0.0 && rates.backward == 0.0)
      it = links_.erase(it);
    else
      ++it;
  }
}

double GossipNetwork::rate(NodeId from, NodeId to) const {
  if (from == to) return 0.0;
  const auto it = links_.find(NodePair::of(from, to));
  if (it == links_.end()) return 0.0;
  return from < to ? it->second.forward : it->second.backward;
}

bool GossipNetwork::has_link(NodeId a, NodeId b) const {
  return a != b && links_.contains(NodePair::of(a, b));
}

double GossipNetwork::out_rate(NodeId i) const {
  double total = 0.0;
  for (const auto& [pair, rates] : links_) {
    if (pair.lo == i) total += rates.forward;
    if (pair.hi == i) total += rates.backward;
  }
  return total;
}

GossipNetwork GossipNetwork::with_link(NodeId i, NodeId j, double rate_ij, double rate_ji) const {
  auto links = links_;
  const auto key = NodePair::of(i, j);
  links[key] = i < j ? LinkRates{rate_ij, rate_ji} : LinkRates{rate_ji, rate_ij};
  return GossipNetwork(n_, lambda_s_, source_rates_, std::move(links));
}

JammerSet::JammerSet(std::span<const NodePair> cuts) {
  for (const auto& p : cuts) add(p.lo, p.hi);
}

JammerSet::JammerSet(std::initializer_list<std::pair<NodeId, NodeId>> cuts) {
  for (const auto& [a, b] : cuts) add(a, b);
}

void JammerSet::add(NodeId a, NodeId b) { cuts_.insert(NodePair::of(a, b)); }

bool JammerSet::contains(NodeId a, NodeId b) const {
  return a != b && cuts_.contains(NodePair::of(a, b));
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::isolated: return "isolated";
    case Shape::path: return "path";
    case Shape::cycle: return "cycle";
    case Shape::clique: return "clique";
    case Shape::star: return "star";
    case Shape::general: return "general";
  }
  return "general";
}

std::size_t ComponentDecomposition::count(Shape shape) const {
  return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                [&](const Component& c) { return c.shape == shape; }));
}

namespace {

std::vector<double> uniform_sources(int n, Rates rates) {
  return std::vector<double>(static_cast<std::size_t>(n), rates.lambda / n);
}

void require_nodes(int n, int at_least, const char* what) {
  if (n < at_least)
    throw InvalidTopology(std::string(what) + " needs n >= " + std::to_string(at_least) +
                          ", got " + std::to_string(n));
}

}  // namespace

GossipNetwork build_ring(int n, Rates rates) {
  require_nodes(n, 2, "ring");
  std::map<NodePair, LinkRates> links;
  if (n == 2) {
    // both neighbor slots of each node point at the other node
    links[{1, 2}] = {rates.lambda, rates.lambda};
  } else {
    const double r = rates.lambda / 2.0;
    for (NodeId i = 1; i <= n; ++i) links[NodePair::of(i, i % n + 1)] = {r, r};
  }
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork build_fully_connected(int n, Rates rates, FcDenominator denominator) {
  require_nodes(n, 2, "fully connected network");
  const double r = rates.lambda / (denominator == FcDenominator::n ? n : n - 1);
  std::map<NodePair, LinkRates> links;
  for (NodeId i = 1; i <= n; ++i)
    for (NodeId j = i + 1; j <= n; ++j) links[{i, j}] = {r, r};
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork build_line(int n0, int n, Rates rates) {
  if (n0 < 1 || n < n0) throw InvalidTopology("line needs 1 <= n0 <= n");
  const double r = rates.lambda / 2.0;
  std::map<NodePair, LinkRates> links;
  for (NodeId i = 1; i < n0; ++i) links[{i, i + 1}] = {r, r};
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork build_star(int d, int n, Rates rates) {
  if (d < 0 || n < d + 1) throw InvalidTopology("star needs 0 <= d <= n-1");
  const double r = rates.lambda / n;
  std::map<NodePair, LinkRates> links;
  for (NodeId leaf = 2; leaf <= d + 1; ++leaf) links[{1, leaf}] = {r, r};
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork build_mini_fc(int k, int n, Rates rates) {
  if (k < 1 || n < k) throw InvalidTopology("mini-FC needs 1 <= k <= n");
  const double r = rates.lambda / n;
  std::map<NodePair, LinkRates> links;
  for (NodeId i = 1; i <= k; ++i)
    for (NodeId j = i + 1; j <= k; ++j) links[{i, j}] = {r, r};
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork build_from_pairs(int n, std::span<const NodePair> pairs, double link_rate,
                               Rates rates) {
  require_nodes(n, 1, "network");
  std::map<NodePair, LinkRates> links;
  for (const auto& p : pairs) links[NodePair::of(p.lo, p.hi)] = {link_rate, link_rate};
  return GossipNetwork(n, rates.lambda_s, uniform_sources(n, rates), std::move(links));
}

GossipNetwork apply_jammers(const GossipNetwork& net, const JammerSet& jam,
                            std::vector<std::string>* diagnostics) {
  auto links = net.links();
  for (const auto& cut : jam.cuts()) {
    if (cut.lo < 1 || cut.hi > net.size())
      throw InvalidTopology("jammer pair (" + std::to_string(cut.lo) + "," +
                            std::to_string(cut.hi) + ") references a node outside [1," +
                            std::to_string(net.size()) + "]");
    if (links.erase(cut) == 0 && diagnostics != nullptr)
      diagnostics->push_back("jammer on (" + std::to_string(cut.lo) + "," +
                             std::to_string(cut.hi) + ") is wasted: no such link");
  }
  return GossipNetwork(net.size(), net.lambda_s(),
                       std::vector<double>(net.source_rates().begin(), net.source_rates().end()),
                       std::move(links));
}

namespace {

using Adjacency = std::vector<std::vector<NodeId>>;

Adjacency support_graph(const GossipNetwork& net) {
  Adjacency adj(static_cast<std::size_t>(net.size()) + 1);
  for (const auto& [pair, rates] : net.links()) {
    adj[pair.lo].push_back(pair.hi);
    adj[pair.hi].push_back(pair.lo);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

// Walks a path or cycle starting at `start`, preferring the smaller neighbor
// on the first step.
std::vector<NodeId> walk(const Adjacency& adj, NodeId start, std::size_t length) {
  std::vector<NodeId> order{start};
  NodeId prev = 0;
  NodeId cur = start;
  while (order.size() < length) {
    NodeId next = 0;
    for (NodeId v : adj[cur])
      if (v != prev) {
        next = v;
        break;
      }
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

Component classify(const Adjacency& adj, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const std::size_t m = nodes.size();
  std::size_t degree_sum = 0;
  std::size_t max_degree = 0;
  std::size_t leaves = 0;
  NodeId hub = nodes.front();
  for (NodeId v : nodes) {
    const std::size_t d = adj[v].size();
    degree_sum += d;
    if (d > max_degree) {
      max_degree = d;
      hub = v;
    }
    if (d == 1) ++leaves;
  }
  Component c;
  c.link_count = degree_sum / 2;
  c.nodes = nodes;
  if (m == 1) {
    c.shape = Shape::isolated;
  } else if (m >= 3 && c.link_count == m * (m - 1) / 2) {
    c.shape = Shape::clique;
  } else if (c.link_count == m - 1 && max_degree <= 2) {
    c.shape = Shape::path;
    const auto end = std::find_if(nodes.begin(), nodes.end(),
                                  [&](NodeId v) { return adj[v].size() == 1; });
    c.nodes = walk(adj, *end, m);
  } else if (c.link_count == m && max_degree == 2) {
    c.shape = Shape::cycle;
    c.nodes = walk(adj, nodes.front(), m);
  } else if (c.link_count == m - 1 && max_degree == m - 1 && leaves == m - 1) {
    c.shape = Shape::star;
    c.nodes.clear();
    c.nodes.push_back(hub);
    for (NodeId v : nodes)
      if (v != hub) c.nodes.push_back(v);
  } else {
    c.shape = Shape::general;
  }
  return c;
}

}  // namespace

ComponentDecomposition decompose(const GossipNetwork& net) {
  const Adjacency adj = support_graph(net);
  std::vector<bool> seen(adj.size(), false);
  ComponentDecomposition out;
  for (NodeId s = 1; s <= net.size(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> members;
    std::queue<NodeId> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      members.push_back(v);
      for (NodeId w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    out.components.push_back(classify(adj, std::move(members)));
  }
  return out;
}

GossipNetwork induced_subnetwork(const GossipNetwork& net, std::span<const NodeId> nodes) {
  std::map<NodeId, NodeId> local;
  std::vector<double> sources;
  for (NodeId v : nodes) {
    local.emplace(v, static_cast<NodeId>(local.size()) + 1);
    sources.push_back(net.source_rate(v));
  }
  if (local.size() != nodes.size()) throw InputError("induced_subnetwork: repeated node");
  std::map<NodePair, LinkRates> links;
  for (const auto& [pair, rates] : net.links()) {
    const auto a = local.find(pair.lo);
    const auto b = local.find(pair.hi);
    if (a == local.end() || b == local.end()) continue;
    const NodeId i = a->second;
    const NodeId j = b->second;
    links[NodePair::of(i, j)] = i < j ? rates : LinkRates{rates.backward, rates.forward};
  }
  return GossipNetwork(static_cast<int>(nodes.size()), net.lambda_s(), std::move(sources),
                       std::move(links));
}

RandomGraph random_connected_graph(std::mt19937_64& rng, int min_nodes, int max_nodes,
                                   Rates rates) {
  if (min_nodes < 1 || max_nodes < min_nodes) throw InputError("random graph: bad size range");
  const int m = uniform_int(rng, min_nodes, max_nodes);
  const double base = rates.lambda / m;

  // shape menu depends on what the size admits
  std::vector<RandomShape> menu{RandomShape::general};
  if (m >= 2) menu.push_back(RandomShape::path);
  if (m >= 4) menu.push_back(RandomShape::cycle);
  if (m >= 4) menu.push_back(RandomShape::star);
  if (m >= 3) menu.push_back(RandomShape::clique);
  const RandomShape shape = menu[uniform_below(rng, menu.size())];

  std::vector<double> sources(static_cast<std::size_t>(m), base);
  std::map<NodePair, LinkRates> links;
  auto random_link = [&] {
    return LinkRates{uniform_real(rng, 0.2, 2.0) * base, uniform_real(rng, 0.2, 2.0) * base};
  };
  switch (shape) {
    case RandomShape::path:
      for (NodeId i = 1; i < m; ++i) links[{i, i + 1}] = random_link();
      break;
    case RandomShape::cycle:
      for (NodeId i = 1; i <= m; ++i) links[NodePair::of(i, i % m + 1)] = random_link();
      break;
    case RandomShape::star: {
      const double r = uniform_real(rng, 0.2, 2.0) * base;
      for (NodeId leaf = 2; leaf <= m; ++leaf) links[{1, leaf}] = {r, r};
      break;
    }
    case RandomShape::clique: {
      const double r = uniform_real(rng, 0.2, 2.0) * base;
      for (NodeId i = 1; i <= m; ++i)
        for (NodeId j = i + 1; j <= m; ++j) links[{i, j}] = {r, r};
      break;
    }
    case RandomShape::general: {
      // random spanning tree, then extra links with probability 0.3
      for (NodeId v = 2; v <= m; ++v) links[{uniform_int(rng, 1, v - 1), v}] = random_link();
      for (NodeId i = 1; i <= m; ++i)
        for (NodeId j = i + 1; j <= m; ++j)
          if (!links.contains({i, j}) && uniform01(rng) < 0.3) links[{i, j}] = random_link();
      break;
    }
  }
  if (shape == RandomShape::path || shape == RandomShape::cycle || shape == RandomShape::general)
    for (auto& s : sources) s = uniform_real(rng, 0.5, 1.5) * base;

  // relabel so structure is not tied to node order
  std::vector<NodeId> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  std::map<NodePair, LinkRates> relabeled;
  for (const auto& [pair, r] : links) {
    const NodeId a = perm[pair.lo - 1];
    const NodeId b = perm[pair.hi - 1];
    relabeled[NodePair::of(a, b)] = a < b ? r : LinkRates{r.backward, r.forward};
  }
  std::vector<double> relabeled_sources(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) relabeled_sources[perm[i] - 1] = sources[i];

  return {GossipNetwork(m, rates.lambda_s, std::move(relabeled_sources), std::move(relabeled)),
          shape};
}

}  // namespace gossipjam
