#include "gossipjam/placement.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "gossipjam/error.hpp"
#include "gossipjam/random.hpp"

namespace gossipjam {

namespace {

void check_ring_count(int n, int n_tilde) {
  if (n < 3) throw InvalidTopology("ring placements need n >= 3, got " + std::to_string(n));
  if (n_tilde < 0 || n_tilde > n)
    throw DomainError("cannot place " + std::to_string(n_tilde) + " jammers on a ring of " +
                      std::to_string(n) + " links");
}

// ring link i joins i and i % n + 1
void cut_link(JammerSet& jam, int n, int i) { jam.add(i, i % n + 1); }

}  // namespace

JammerSet ring_equidistant(int n, int n_tilde) {
  check_ring_count(n, n_tilde);
  JammerSet jam;
  if (n_tilde == 0) return jam;
  const int q = n / n_tilde;
  const int r = n % n_tilde;
  int boundary = 0;
  for (int s = 0; s < n_tilde; ++s) {
    boundary += q + (s < r ? 1 : 0);
    cut_link(jam, n, boundary);
  }
  return jam;
}

JammerSet ring_adjacent(int n, int n_tilde) {
  check_ring_count(n, n_tilde);
  JammerSet jam;
  for (int i = 1; i <= n_tilde; ++i) cut_link(jam, n, i);
  return jam;
}

JammerSet ring_random(int n, int n_tilde, std::uint64_t seed) {
  check_ring_count(n, n_tilde);
  auto rng = make_stream(seed);
  std::vector<int> links(static_cast<std::size_t>(n));
  std::iota(links.begin(), links.end(), 1);
  JammerSet jam;
  for (int s = 0; s < n_tilde; ++s) {
    const auto pick = static_cast<std::size_t>(s) + uniform_below(rng, static_cast<std::uint64_t>(n - s));
    std::swap(links[static_cast<std::size_t>(s)], links[pick]);
    cut_link(jam, n, links[static_cast<std::size_t>(s)]);
  }
  return jam;
}

std::int64_t choose2(std::int64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

GreedyPlan greedy_plan(int n, std::int64_t n_tilde) {
  if (n < 1) throw InvalidTopology("greedy placement needs n >= 1");
  const std::int64_t all = choose2(n);
  if (n_tilde < 0 || n_tilde > all)
    throw DomainError(std::to_string(n_tilde) + " jammers exceed the " + std::to_string(all) +
                      " links of a " + std::to_string(n) + "-node network");
  const std::int64_t n_bar = all - n_tilde;
  GreedyPlan plan;
  plan.n = n;
  plan.k = 1;
  while (plan.k < n && choose2(plan.k + 1) <= n_bar) ++plan.k;
  plan.c = static_cast<int>(n_bar - choose2(plan.k));
  plan.steps = plan.c == 0 ? plan.k : plan.k + 1;
  return plan;
}

std::vector<NodePair> greedy_links(const GreedyPlan& plan) {
  std::vector<NodePair> links;
  for (NodeId i = 1; i <= plan.k; ++i)
    for (NodeId j = i + 1; j <= plan.k; ++j) links.push_back({i, j});
  for (NodeId i = 1; i <= plan.c; ++i) links.push_back({i, plan.k + 1});
  return links;
}

namespace {

JammerSet complement(int n, const std::vector<NodePair>& keep) {
  const std::set<NodePair> kept(keep.begin(), keep.end());
  JammerSet jam;
  for (NodeId i = 1; i <= n; ++i)
    for (NodeId j = i + 1; j <= n; ++j)
      if (!kept.contains({i, j})) jam.add(i, j);
  return jam;
}

}  // namespace

std::pair<GreedyPlan, JammerSet> fc_greedy(int n, std::int64_t n_tilde) {
  const GreedyPlan plan = greedy_plan(n, n_tilde);
  return {plan, complement(n, greedy_links(plan))};
}

std::vector<NodePair> cluster_links(int n, int k_bar, int m_bar) {
  if (m_bar < 1 || k_bar < 1)
    throw DomainError("cluster plan needs m_bar >= 1 and k_bar >= 1");
  if (static_cast<std::int64_t>(m_bar) * k_bar > n)
    throw DomainError(std::to_string(m_bar) + " clusters of " + std::to_string(k_bar) +
                      " nodes do not fit in " + std::to_string(n) + " nodes");
  std::vector<NodePair> links;
  for (int cl = 0; cl < m_bar; ++cl) {
    const NodeId base = cl * k_bar;
    for (NodeId i = 1; i <= k_bar; ++i)
      for (NodeId j = i + 1; j <= k_bar; ++j) links.push_back({base + i, base + j});
  }
  return links;
}

JammerSet fc_clusters(int n, int k_bar, int m_bar) {
  return complement(n, cluster_links(n, k_bar, m_bar));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

ConfigEnumerator::ConfigEnumerator(int n, int n_bar) {
  const auto all = static_cast<std::uint64_t>(choose2(n));
  if (n < 1) throw InvalidTopology("enumeration needs n >= 1");
  if (n_bar < 0 || static_cast<std::uint64_t>(n_bar) > all)
    throw DomainError("link count " + std::to_string(n_bar) + " outside [0, " +
                      std::to_string(all) + "]");
  if (n > max_nodes)
    throw DomainError("enumerating n = " + std::to_string(n) + " would visit " +
                      std::to_string(binomial(all, static_cast<std::uint64_t>(n_bar))) +
                      " configurations; the limit is n <= " + std::to_string(max_nodes));
  for (NodeId i = 1; i <= n; ++i)
    for (NodeId j = i + 1; j <= n; ++j) pairs_.push_back({i, j});
  index_.resize(static_cast<std::size_t>(n_bar));
  std::iota(index_.begin(), index_.end(), 0);
  count_ = binomial(all, static_cast<std::uint64_t>(n_bar));
}

std::optional<std::vector<NodePair>> ConfigEnumerator::next() {
  if (done_) return std::nullopt;
  std::vector<NodePair> config;
  config.reserve(index_.size());
  for (int i : index_) config.push_back(pairs_[static_cast<std::size_t>(i)]);

  // advance to the next combination
  const int total = static_cast<int>(pairs_.size());
  const int r = static_cast<int>(index_.size());
  int pos = r - 1;
  while (pos >= 0 && index_[static_cast<std::size_t>(pos)] == total - r + pos) --pos;
  if (pos < 0) {
    done_ = true;
  } else {
    ++index_[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < r; ++q)
      index_[static_cast<std::size_t>(q)] = index_[static_cast<std::size_t>(q - 1)] + 1;
  }
  return config;
}

}  // namespace gossipjam
