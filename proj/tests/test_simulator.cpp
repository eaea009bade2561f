#include <doctest.h>

#include <cmath>

#include "gossipjam/analytic.hpp"
#include "gossipjam/error.hpp"
#include "gossipjam/simulator.hpp"

using namespace gossipjam;

namespace {

SimConfig config(double horizon, int reps, std::uint64_t seed = 7) {
  SimConfig cfg;
  cfg.horizon = horizon;
  cfg.replications = reps;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("isolated node") {
  const GossipNetwork g(1, 1.0, {1.0 / 6});
  const SimResult r = simulate(g, config(1e6, 10));
  CHECK(std::abs(r.per_node_time_avg[0] - 6.0) <= 3 * r.std_error[0]);
  CHECK(r.std_error[0] > 0.0);
}

TEST_CASE("two-node fully connected network") {
  const SimResult r = simulate(build_fully_connected(2), config(1e6, 4));
  for (double a : r.per_node_time_avg) CHECK(std::abs(a - 1.5) <= 0.015);
}

TEST_CASE("unjammed six-node ring") {
  const SimResult r = simulate(build_ring(6), config(1e6, 4));
  const double exact = ring_node_age(6, 6);
  for (double a : r.per_node_time_avg) CHECK(std::abs(a - exact) <= 0.01 * exact);
  CHECK(std::abs(r.average - exact) <= 3 * r.average_std_error + 1e-3);
}

TEST_CASE("set ages") {
  const GossipNetwork fc = build_fully_connected(2);
  const SimConfig cfg = config(2e5, 6);
  const std::vector<NodeId> both{1, 2};
  const std::vector<NodeId> one{1};
  const SetAgeEstimate whole = simulate_set_age(fc, both, cfg);
  CHECK(std::abs(whole.mean - 1.0) <= 3 * whole.std_error + 0.01);
  const SetAgeEstimate single = simulate_set_age(fc, one, cfg);
  const SimResult per_node = simulate(fc, cfg);
  CHECK(single.mean == doctest::Approx(per_node.per_node_time_avg[0]).epsilon(1e-12));
  CHECK(whole.mean <= single.mean);
  CHECK_THROWS_AS(simulate_set_age(fc, {}, cfg), InputError);
}

TEST_CASE("event count matches the total rate") {
  const GossipNetwork g = build_ring(10);
  const SimResult r = simulate(g, config(2e4, 3));
  const double expected = (1.0 + 1.0 + 10.0) * 2e4 * 3;
  CHECK(std::abs(static_cast<double>(r.events) - expected) <= 0.05 * expected);
}

TEST_CASE("determinism across runs and thread counts") {
  const GossipNetwork g = apply_jammers(build_ring(12), JammerSet{{3, 4}, {9, 10}});
  SimConfig a = config(5e3, 5, 99);
  a.threads = 1;
  SimConfig b = a;
  b.threads = 3;
  const SimResult x = simulate(g, a);
  const SimResult y = simulate(g, b);
  const SimResult z = simulate(g, a);
  CHECK(x.per_node_time_avg == y.per_node_time_avg);
  CHECK(x.per_node_time_avg == z.per_node_time_avg);
  CHECK(x.std_error == z.std_error);
  CHECK(x.events == y.events);
  SimConfig c = a;
  c.seed = 100;
  CHECK(simulate(g, c).per_node_time_avg != x.per_node_time_avg);
}

TEST_CASE("configuration errors") {
  const GossipNetwork g = build_ring(4);
  SimConfig bad = config(10.0, 1);
  bad.warmup = 10.0;
  CHECK_THROWS_AS(simulate(g, bad), ConfigError);
  CHECK_THROWS_AS(simulate(g, config(10.0, 0)), ConfigError);
  CHECK_THROWS_AS(simulate(g, config(-1.0, 1)), ConfigError);
  const GossipNetwork dead(2, 0.0, {0.0, 0.0});
  CHECK_THROWS_AS(simulate(dead, config(10.0, 1)), DegenerateInput);
  const SimResult one = simulate(g, config(100.0, 1));
  CHECK(std::isnan(one.std_error[0]));
}

TEST_CASE("ages are positive") {
  const SimResult r = simulate(apply_jammers(build_ring(8), JammerSet{{1, 2}}), config(1e4, 2));
  for (double a : r.per_node_time_avg) CHECK(a > 0.0);
}
