#include "gossipjam/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "gossipjam/error.hpp"
#include "gossipjam/random.hpp"

namespace gossipjam {

namespace {

// from == 0 marks a source event; from == to == 0 the source self-update.
struct Event {
  int from;
  int to;
};

struct EventTable {
  std::vector<Event> events;
  std::vector<double> cumulative;
  double total = 0.0;
};

EventTable build_events(const GossipNetwork& net) {
  EventTable t;
  auto push = [&](int from, int to, double rate) {
    if (rate <= 0.0) return;
    t.total += rate;
    t.events.push_back({from, to});
    t.cumulative.push_back(t.total);
  };
  push(0, 0, net.lambda_s());
  for (NodeId j = 1; j <= net.size(); ++j) push(0, j, net.source_rate(j));
  for (const auto& [pair, rates] : net.links()) {
    push(pair.lo, pair.hi, rates.forward);
    push(pair.hi, pair.lo, rates.backward);
  }
  return t;
}

// Integrates x(t) lazily: call `set` whenever x changes.
struct Integrator {
  std::uint64_t value = 0;
  double since = 0.0;
  double area = 0.0;

  void set(std::uint64_t v, double t) {
    area += static_cast<double>(value) * (t - since);
    value = v;
    since = t;
  }
  void restart(double t) {
    area = 0.0;
    since = t;
  }
};

struct Replication {
  std::vector<double> node_age;
  double set_age = 0.0;
  std::uint64_t events = 0;
};

Replication run_one(const GossipNetwork& net, const EventTable& table, const SimConfig& cfg,
                    std::uint64_t stream, std::span<const NodeId> set) {
  auto rng = make_stream(cfg.seed, stream);
  const auto n = static_cast<std::size_t>(net.size());
  const double warmup = cfg.warmup_time();
  Integrator source;
  std::vector<Integrator> node(n + 1);
  std::vector<bool> in_set(n + 1, false);
  for (NodeId v : set) in_set[static_cast<std::size_t>(v)] = true;
  Integrator best_in_set;  // max version held inside the set

  auto restart_all = [&](double t) {
    source.restart(t);
    for (auto& x : node) x.restart(t);
    best_in_set.restart(t);
  };
  auto flush_all = [&](double t) {
    source.set(source.value, t);
    for (auto& x : node) x.set(x.value, t);
    best_in_set.set(best_in_set.value, t);
  };

  Replication out;
  bool measuring = warmup <= 0.0;
  double t = 0.0;
  for (;;) {
    t += exponential(rng, table.total);
    if (!measuring && t >= warmup) {
      flush_all(warmup);
      restart_all(warmup);
      measuring = true;
    }
    if (t >= cfg.horizon) break;
    ++out.events;
    const double u = uniform01(rng) * table.total;
    auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), u);
    if (it == table.cumulative.end()) --it;
    const Event e = table.events[static_cast<std::size_t>(it - table.cumulative.begin())];

    std::uint64_t incoming = 0;
    if (e.from == 0 && e.to == 0) {
      source.set(source.value + 1, t);
      continue;
    }
    incoming = e.from == 0 ? source.value : node[static_cast<std::size_t>(e.from)].value;
    auto& receiver = node[static_cast<std::size_t>(e.to)];
    if (incoming <= receiver.value) continue;  // stale packet
    receiver.set(incoming, t);
    assert(receiver.value <= source.value);
    if (in_set[static_cast<std::size_t>(e.to)] && incoming > best_in_set.value)
      best_in_set.set(incoming, t);
  }
  flush_all(cfg.horizon);

  const double span = cfg.horizon - warmup;
  out.node_age.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.node_age[i] = (source.area - node[i + 1].area) / span;
  out.set_age = (source.area - best_in_set.area) / span;
  return out;
}

void validate(const GossipNetwork& net, const SimConfig& cfg, const EventTable& table) {
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon))
    throw ConfigError("horizon must be positive and finite");
  const double w = cfg.warmup_time();
  if (!(w >= 0.0) || !(cfg.horizon > w))
    throw ConfigError("need horizon > warmup >= 0 (horizon " + std::to_string(cfg.horizon) +
                      ", warmup " + std::to_string(w) + ")");
  if (cfg.replications < 1) throw ConfigError("replications must be >= 1");
  if (!(table.total > 0.0) || !std::isfinite(table.total))
    throw DegenerateInput("network has no positive event rate");
  (void)net;
}

std::vector<Replication> run_all(const GossipNetwork& net, const SimConfig& cfg,
                                 std::span<const NodeId> set) {
  const EventTable table = build_events(net);
  validate(net, cfg, table);
  const auto reps = static_cast<std::size_t>(cfg.replications);
  std::vector<Replication> results(reps);

  std::size_t threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) results[r] = run_one(net, table, cfg, r, set);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < reps; r = next++) results[r] = run_one(net, table, cfg, r, set);
    });
  pool.clear();  // joins
  return results;
}

// mean and standard error of the mean, reduced in index order
std::pair<double, double> mean_and_error(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, std::numeric_limits<double>::quiet_NaN()};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace

SimResult simulate(const GossipNetwork& net, const SimConfig& cfg) {
  const auto reps = run_all(net, cfg, {});
  const auto n = static_cast<std::size_t>(net.size());
  SimResult out;
  out.replications = cfg.replications;
  out.per_node_time_avg.resize(n);
  out.std_error.resize(n);
  std::vector<double> column(reps.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < reps.size(); ++r) column[r] = reps[r].node_age[i];
    std::tie(out.per_node_time_avg[i], out.std_error[i]) = mean_and_error(column);
  }
  for (std::size_t r = 0; r < reps.size(); ++r) {
    double s = 0.0;
    for (double a : reps[r].node_age) s += a;
    column[r] = s / static_cast<double>(n);
    out.events += reps[r].events;
  }
  std::tie(out.average, out.average_std_error) = mean_and_error(column);
  return out;
}

SetAgeEstimate simulate_set_age(const GossipNetwork& net, std::span<const NodeId> set,
                                const SimConfig& cfg) {
  if (set.empty()) throw InputError("set age of an empty set");
  for (NodeId v : set)
    if (v < 1 || v > net.size())
      throw InputError("node " + std::to_string(v) + " outside [1," + std::to_string(net.size()) + "]");
  const auto reps = run_all(net, cfg, set);
  std::vector<double> column;
  for (const auto& r : reps) column.push_back(r.set_age);
  const auto [mean, err] = mean_and_error(column);
  return {mean, err};
}

}  // namespace gossipjam
