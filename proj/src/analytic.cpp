#include "gossipjam/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "gossipjam/error.hpp"
#include "gossipjam/kernels.hpp"

namespace gossipjam {

AgeReport AgeReport::from(std::vector<double> per_node) {
  AgeReport r;
  r.total = std::accumulate(per_node.begin(), per_node.end(), 0.0);
  r.average = per_node.empty() ? 0.0 : r.total / static_cast<double>(per_node.size());
  r.per_node = std::move(per_node);
  return r;
}

namespace {

std::string describe(std::span<const NodeId> nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i == 6 && nodes.size() > 8) {
      s += ", ... (" + std::to_string(nodes.size()) + " nodes)";
      break;
    }
    s += (i ? ", " : "") + std::to_string(nodes[i]);
  }
  return s + "}";
}

double source_total(const GossipNetwork& net, std::span<const NodeId> nodes) {
  double total = 0.0;
  for (NodeId v : nodes) total += net.source_rate(v);
  if (total == 0.0 && net.lambda_s() > 0.0)
    throw DegenerateInput("component " + describe(nodes) + " receives no source updates");
  return total;
}

double checked_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

double SubsetAgeTable::age_of(std::span<const NodeId> members) const {
  if (members.empty()) throw InputError("set age of an empty set");
  std::uint32_t mask = 0;
  for (NodeId v : members) {
    const auto it = std::find(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end())
      throw InputError("node " + std::to_string(v) + " is not in component " + describe(nodes_));
    mask |= 1u << static_cast<unsigned>(it - nodes_.begin());
  }
  return ages_[mask];
}

SubsetAgeTable subset_age_table(const GossipNetwork& net, std::span<const NodeId> component,
                                int cap) {
  const std::size_t m = component.size();
  if (m == 0) throw InputError("empty component");
  if (static_cast<int>(m) > cap || m > 30)
    throw ComponentTooLarge("component " + describe(component) + " has " + std::to_string(m) +
                            " nodes, over the subset recursion cap of " + std::to_string(cap));
  const std::size_t stride = (m + 3) / 4 * 4;
  std::vector<double> in_rate(stride * stride, 0.0);
  std::vector<double> source(m);
  for (std::size_t j = 0; j < m; ++j) {
    source[j] = net.source_rate(component[j]);
    for (std::size_t i = 0; i < m; ++i) in_rate[j * stride + i] = net.rate(component[i], component[j]);
  }
  const double total = source_total(net, component);

  const std::uint32_t full = (m == 32) ? ~0u : (1u << m) - 1u;
  std::vector<double> ages(static_cast<std::size_t>(full) + 1, 0.0);
  ages[full] = checked_ratio(net.lambda_s(), total);
  const kernels::SubsetSystem sys{net.lambda_s(), m, stride, in_rate, source};
  for (std::uint32_t mask = full - 1; mask != 0; --mask) {
    const double a = kernels::subset_step(sys, mask, ages);
    ages[mask] = std::isinf(a) ? 0.0 : a;  // only reachable when lambda_s == 0
  }
  return SubsetAgeTable(std::vector<NodeId>(component.begin(), component.end()), std::move(ages));
}

namespace {

template <typename ComponentSolver>
AgeReport solve_by_component(const GossipNetwork& net, ComponentSolver&& per_component) {
  std::vector<double> ages(static_cast<std::size_t>(net.size()), 0.0);
  for (const auto& comp : decompose(net).components) {
    const std::vector<double> local = per_component(comp);
    for (std::size_t i = 0; i < comp.nodes.size(); ++i) ages[comp.nodes[i] - 1] = local[i];
  }
  return AgeReport::from(std::move(ages));
}

std::vector<double> subset_component(const GossipNetwork& net, const Component& comp, int cap) {
  const auto table = subset_age_table(net, comp.nodes, cap);
  std::vector<double> out(comp.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = table.at(1u << i);
  return out;
}

// Uniform means every link in the component has the same rate in both
// directions and every member has the same source rate.
bool uniform_rates(const GossipNetwork& net, const Component& comp, double& link, double& src) {
  src = net.source_rate(comp.nodes.front());
  for (NodeId v : comp.nodes)
    if (net.source_rate(v) != src) return false;
  bool first = true;
  for (NodeId a : comp.nodes)
    for (NodeId b : comp.nodes) {
      if (a >= b || !net.has_link(a, b)) continue;
      const double f = net.rate(a, b);
      if (net.rate(b, a) != f) return false;
      if (first) {
        link = f;
        first = false;
      } else if (f != link) {
        return false;
      }
    }
  return !first;
}

}  // namespace

AgeReport solve_subset_dp(const GossipNetwork& net, const SolverOptions& opts) {
  return solve_by_component(net, [&](const Component& comp) {
    return subset_component(net, comp, opts.subset_cap);
  });
}

std::optional<std::vector<double>> specialized_ages(const GossipNetwork& net,
                                                    const Component& comp) {
  const auto m = static_cast<int>(comp.nodes.size());
  double link = 0.0;
  double src = 0.0;
  switch (comp.shape) {
    case Shape::isolated:
      return std::vector<double>{
          checked_ratio(net.lambda_s(), source_total(net, comp.nodes))};
    case Shape::path:
      return path_ages(net, comp.nodes);
    case Shape::cycle:
      return cycle_ages(net, comp.nodes);
    case Shape::clique:
      if (m == 3) return cycle_ages(net, comp.nodes);
      if (!uniform_rates(net, comp, link, src)) return std::nullopt;
      return std::vector<double>(comp.nodes.size(),
                                 clique_node_age(m, link, src, net.lambda_s()));
    case Shape::star: {
      if (!uniform_rates(net, comp, link, src)) return std::nullopt;
      const StarAges s = star_ages(m - 1, link, src, net.lambda_s());
      std::vector<double> out(comp.nodes.size(), s.leaf);
      out[0] = s.hub;
      return out;
    }
    case Shape::general:
      break;
  }
  return std::nullopt;
}

AgeReport solve(const GossipNetwork& net, const SolverOptions& opts) {
  return solve_by_component(net, [&](const Component& comp) {
    if (auto ages = specialized_ages(net, comp)) return *std::move(ages);
    return subset_component(net, comp, opts.subset_cap);
  });
}

namespace {

// Contiguous-interval recursion on a path. right[q] is the rate q -> q+1,
// left[q] the rate q+1 -> q.
std::vector<double> interval_dp(double lambda_s, std::span<const double> sources,
                                std::span<const double> right, std::span<const double> left) {
  const std::size_t m = sources.size();
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + sources[i];
  if (prefix[m] == 0.0 && lambda_s > 0.0)
    throw DegenerateInput("path receives no source updates");

  std::vector<double> in_left(m, 0.0);   // p-1 -> p
  std::vector<double> in_right(m, 0.0);  // q+1 -> q
  for (std::size_t q = 0; q + 1 < m; ++q) {
    in_left[q + 1] = right[q];
    in_right[q] = left[q];
  }

  std::vector<double> prev(m + 2, 0.0);
  std::vector<double> cur(m + 2, 0.0);
  std::fill(prev.begin(), prev.end(), 0.0);
  for (std::size_t k = m; k >= 1; --k) {
    const std::size_t count = m - k + 1;
    const kernels::IntervalRow row{lambda_s, m, k, prefix, in_left, in_right};
    kernels::interval_row(row, std::span<const double>(prev.data(), count + 1),
                          std::span<double>(cur.data(), count + 2));
    std::swap(prev, cur);
  }
  return std::vector<double>(prev.begin() + 1, prev.begin() + 1 + static_cast<std::ptrdiff_t>(m));
}

}  // namespace

std::vector<double> path_ages(const GossipNetwork& net, std::span<const NodeId> order) {
  const std::size_t m = order.size();
  std::vector<double> sources(m);
  std::vector<double> right(m > 0 ? m - 1 : 0);
  std::vector<double> left(right.size());
  for (std::size_t i = 0; i < m; ++i) sources[i] = net.source_rate(order[i]);
  for (std::size_t q = 0; q + 1 < m; ++q) {
    right[q] = net.rate(order[q], order[q + 1]);
    left[q] = net.rate(order[q + 1], order[q]);
  }
  return interval_dp(net.lambda_s(), sources, right, left);
}

std::vector<double> cycle_ages(const GossipNetwork& net, std::span<const NodeId> order) {
  const std::size_t m = order.size();
  if (m < 3) throw ShapeError("cycle needs at least 3 nodes");
  std::vector<double> s(m), cw(m), ccw(m);
  for (std::size_t p = 0; p < m; ++p) {
    s[p] = net.source_rate(order[p]);
    cw[p] = net.rate(order[p], order[(p + 1) % m]);
    ccw[p] = net.rate(order[p], order[(p + m - 1) % m]);
  }
  std::vector<double> prefix(2 * m + 1, 0.0);
  for (std::size_t i = 0; i < 2 * m; ++i) prefix[i + 1] = prefix[i] + s[i % m];
  const double lambda_s = net.lambda_s();
  const double base = checked_ratio(lambda_s, source_total(net, order));

  // arc (p, k): nodes p, p+1, ..., p+k-1 modulo m; it grows when p-1
  // pushes into p or p+k pushes into p+k-1
  std::vector<double> next(m, base);
  std::vector<double> cur(m);
  for (std::size_t k = m - 1; k >= 1; --k) {
    for (std::size_t p = 0; p < m; ++p) {
      const double l = cw[(p + m - 1) % m];
      const double r = ccw[(p + k) % m];
      const double num = lambda_s + l * next[(p + m - 1) % m] + r * next[p];
      const double den = (prefix[p + k] - prefix[p]) + l + r;
      cur[p] = num / den;
    }
    std::swap(next, cur);
  }
  return next;
}

std::vector<double> solve_path_interval_dp(int n0, int n, Rates rates) {
  if (n0 < 1 || n < n0) throw InvalidTopology("path needs 1 <= n0 <= n");
  const auto m = static_cast<std::size_t>(n0);
  const std::vector<double> sources(m, rates.lambda / n);
  const std::vector<double> link(m - 1, rates.lambda / 2.0);
  return interval_dp(rates.lambda_s, sources, link, link);
}

namespace {

// sum_{j=1}^{n0-1} P_j + (n/n0) P_{n0-1} with P_j = prod_{k<=j} 1/(k/n + 1),
// for real n.
double ring_formula(int n0, double n) {
  double sum = 0.0;
  double last = 1.0;
  if (n0 <= 1000) {
    double product = 1.0;
    for (int j = 1; j < n0; ++j) {
      product /= static_cast<double>(j) / n + 1.0;
      sum += product;
    }
    last = product;
  } else {
    double log_product = 0.0;
    for (int j = 1; j < n0; ++j) {
      log_product -= std::log1p(static_cast<double>(j) / n);
      sum += std::exp(log_product);
    }
    last = std::exp(log_product);
  }
  return sum + (n / n0) * last;
}

}  // namespace

double ring_node_age(int n0, int n, Rates rates) {
  if (n0 < 1 || n < 1) throw DomainError("ring age needs n0 >= 1 and n >= 1");
  return rates.lambda_s / rates.lambda * ring_formula(n0, static_cast<double>(n));
}

double line_corner_age(int n0, int n, Rates rates) {
  if (n0 < 1 || n < 1) throw DomainError("line age needs n0 >= 1 and n >= 1");
  return 2.0 * rates.lambda_s / rates.lambda * ring_formula(n0, n / 2.0);
}

RingAgeTable::RingAgeTable(std::vector<int> system_sizes, int max_ring, Rates rates)
    : batch_(system_sizes.size()), max_ring_(max_ring), scale_(rates.lambda_s / rates.lambda) {
  if (max_ring < 1 || system_sizes.empty()) throw DomainError("empty ring age table");
  std::vector<double> sizes(system_sizes.begin(), system_sizes.end());
  table_.assign(batch_ * static_cast<std::size_t>(max_ring), 0.0);
  kernels::ring_age_table(sizes, static_cast<std::size_t>(max_ring), table_);
}

double RingAgeTable::age(int n0, std::size_t b) const {
  if (n0 < 1 || n0 > max_ring_ || b >= batch_) throw DomainError("ring age table lookup out of range");
  return scale_ * table_[static_cast<std::size_t>(n0 - 1) * batch_ + b];
}

double star_node_age(int d, int n, Rates rates) {
  if (d < 0) throw DomainError("star degree must be >= 0");
  double sum = 1.0;
  double product = 1.0;
  for (int d2 = 0; d2 < d; ++d2) {
    product *= static_cast<double>(d - d2) / (d + 1);
    sum += product;
  }
  return rates.lambda_s / rates.lambda * (static_cast<double>(n) / (d + 1)) * sum;
}

StarAges star_ages(int leaves, double link_rate, double source_rate, double lambda_s) {
  // D(a): age of the set {hub} plus a leaves
  double next = lambda_s / ((leaves + 1) * source_rate);
  double d1 = next;
  for (int a = leaves - 1; a >= 0; --a) {
    const double into = (leaves - a) * link_rate;
    next = (lambda_s + into * next) / ((a + 1) * source_rate + into);
    if (a == 1) d1 = next;
  }
  StarAges out;
  out.hub = next;
  if (leaves >= 1) {
    const double with_hub = leaves == 1 ? lambda_s / (2 * source_rate) : d1;
    out.leaf = (lambda_s + link_rate * with_hub) / (source_rate + link_rate);
  }
  return out;
}

double clique_node_age(int m, double link_rate, double source_rate, double lambda_s) {
  double age = lambda_s / (m * source_rate);
  for (int j = m - 1; j >= 1; --j) {
    const double into = static_cast<double>(j) * (m - j) * link_rate;
    age = (lambda_s + into * age) / (j * source_rate + into);
  }
  return age;
}

double rd_coefficient(int d) {
  if (d < 1) throw DomainError("R_d needs d >= 1");
  return 1.0 - star_node_age(d, 1, {1.0, 1.0});
}

double age_reduction_Rd(int d, int n, Rates rates) {
  if (d < 1) throw DomainError("R_d needs d >= 1");
  return rates.lambda_s * n / rates.lambda - star_node_age(d, n, rates);
}

double floor2(double x) { return std::floor(x * 100.0 + 1e-9) / 100.0; }

MiniFcAge mini_fc_age(int k, int n, Rates rates) {
  if (k < 1 || n < k) throw DomainError("mini-FC needs 1 <= k <= n");
  double harmonic = 0.0;
  for (int j = 1; j <= k; ++j) harmonic += 1.0 / j;
  const double ratio = rates.lambda_s / rates.lambda;
  return {ratio * (static_cast<double>(n) / k) * harmonic,
          ratio * (n * harmonic + static_cast<double>(n) * (n - k))};
}

ProductBounds exp_product_bounds(int j, int n) {
  if (j < 1 || n < 1) throw DomainError("product bounds need j >= 1 and n >= 1");
  if (j > n) throw DomainError("product bounds hold only for j <= n");
  // summed in log space: a running quotient sticks at the smallest subnormal
  double log_product = 0.0;
  for (int k = 1; k <= j; ++k) log_product -= std::log1p(static_cast<double>(k) / n);
  const double product = std::exp(log_product);
  const double jj = static_cast<double>(j) * j;
  return {std::exp(-jj / n), std::exp(-jj / (4.0 * n)), product};
}

ScalingBounds ring_scaling_bounds(double n, double alpha, double c) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(c > 0.0)) throw DomainError("c must be positive");
  if (!(n >= 1.0)) throw DomainError("n must be >= 1");
  const double root = std::sqrt(std::numbers::pi / 2.0) * std::sqrt(n);
  const double power = c * std::pow(n, alpha);
  const double lower =
      (alpha < 0.5 ? root : 0.0) + power * std::exp(-std::pow(n, 1.0 - 2.0 * alpha) / (2.0 * c * c));
  return {lower, power + root + c};
}

namespace {

struct Segment {
  NodeId first;
  int length;
};

// Link index i stands for the ring link between i and i % n + 1.
std::vector<Segment> segments_of(int n, const JammerSet& jam) {
  if (n < 2) throw ShapeError("ring needs at least 2 nodes");
  std::vector<int> positions;
  for (const auto& cut : jam.cuts()) {
    if (cut.lo < 1 || cut.hi > n)
      throw InvalidTopology("cut (" + std::to_string(cut.lo) + "," + std::to_string(cut.hi) +
                            ") outside the ring");
    if (cut.hi == cut.lo + 1)
      positions.push_back(cut.lo);
    else if (cut.lo == 1 && cut.hi == n)
      positions.push_back(n);
    else
      throw ShapeError("cut (" + std::to_string(cut.lo) + "," + std::to_string(cut.hi) +
                       ") is not a ring link");
  }
  std::vector<Segment> out;
  if (positions.empty()) return out;
  if (n == 2) return {{1, 1}, {2, 1}};  // the single link is the whole ring
  std::sort(positions.begin(), positions.end());
  const std::size_t t = positions.size();
  for (std::size_t a = 0; a < t; ++a) {
    const int from = positions[a];
    const int to = a + 1 < t ? positions[a + 1] : positions[0] + n;
    out.push_back({from % n + 1, to - from});
  }
  return out;
}

}  // namespace

std::vector<int> ring_segments(int n, const JammerSet& jam) {
  std::vector<int> lengths;
  for (const auto& s : segments_of(n, jam)) lengths.push_back(s.length);
  return lengths;
}

AgeReport dismembered_ring_age(int n, const JammerSet& jam, RingModel model, Rates rates) {
  const auto segments = segments_of(n, jam);
  std::vector<double> ages(static_cast<std::size_t>(n));
  if (segments.empty()) {
    std::fill(ages.begin(), ages.end(), ring_node_age(n, n, rates));
    return AgeReport::from(std::move(ages));
  }
  std::map<int, std::vector<double>> cache;
  for (const auto& seg : segments) {
    auto it = cache.find(seg.length);
    if (it == cache.end()) {
      std::vector<double> seg_ages =
          model == RingModel::line
              ? solve_path_interval_dp(seg.length, n, rates)
              : std::vector<double>(static_cast<std::size_t>(seg.length),
                                    ring_node_age(seg.length, n, rates));
      it = cache.emplace(seg.length, std::move(seg_ages)).first;
    }
    for (int i = 0; i < seg.length; ++i)
      ages[static_cast<std::size_t>((seg.first - 1 + i) % n)] = it->second[static_cast<std::size_t>(i)];
  }
  return AgeReport::from(std::move(ages));
}

}  // namespace gossipjam
