#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "gossipjam/analytic.hpp"
#include "gossipjam/error.hpp"
#include "gossipjam/kernels.hpp"
#include "gossipjam/placement.hpp"
#include "gossipjam/random.hpp"
#include "oracles/ctmc_oracle.hpp"

using namespace gossipjam;

namespace {

bool rel_close(double a, double b, double tol = 1e-10) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// The network of six nodes with a single link between nodes 1 and 4.
GossipNetwork one_link_network() {
  const std::vector<NodePair> pairs{{1, 4}};
  return build_from_pairs(6, pairs, 1.0 / 6);
}

}  // namespace

TEST_CASE("single link among six nodes") {
  const AgeReport r = solve_subset_dp(one_link_network());
  CHECK(rel_close(r.per_node[0], 0.75 * 6));
  CHECK(rel_close(r.per_node[3], 0.75 * 6));
  CHECK(rel_close(r.per_node[1], 6.0));
  CHECK(rel_close(r.total, 5.5 * 6));
  CHECK(rel_close(r.average, r.total / 6));
}

TEST_CASE("isolated node age is lambda_s n / lambda") {
  const GossipNetwork g(1, 2.0, {0.25});
  CHECK(rel_close(solve_subset_dp(g).per_node[0], 8.0));
  CHECK(rel_close(solve(g).per_node[0], 8.0));
  CHECK(rel_close(ring_node_age(1, 9, {1.0, 3.0}), 27.0));
  CHECK(rel_close(line_corner_age(1, 9), 9.0));
  CHECK(rel_close(solve_path_interval_dp(1, 9)[0], 9.0));
  CHECK(rel_close(star_node_age(0, 9), 9.0));
}

TEST_CASE("mini-FC closed form") {
  // n H_k + n (n - k) with H_3 = 11/6
  const double total = 6.0 * (1.0 + 0.5 + 1.0 / 3) + 6.0 * 3;
  CHECK(rel_close(total, 29.0));
  const MiniFcAge m = mini_fc_age(3, 6);
  CHECK(rel_close(m.per_node, 11.0 / 3));
  CHECK(rel_close(m.total, 29.0));
  CHECK(rel_close(solve_subset_dp(build_mini_fc(3, 6)).total, 29.0));
  CHECK(rel_close(mini_fc_age(2, 6).per_node, 4.5));
  const MiniFcAge full = mini_fc_age(5, 5);
  const double h5 = 1 + 0.5 + 1.0 / 3 + 0.25 + 0.2;
  CHECK(rel_close(full.per_node, h5));
  CHECK(rel_close(full.total, 5 * h5));
}

TEST_CASE("ring and line closed forms at small sizes") {
  CHECK(rel_close(ring_node_age(2, 2), 4.0 / 3));
  CHECK(rel_close(ring_node_age(6, 6), 1899.0 / 770));
  CHECK(rel_close(line_corner_age(2, 2), 1.5));
  const auto path = solve_path_interval_dp(2, 2);
  CHECK(rel_close(path[0], 1.5));
  CHECK(rel_close(path[1], 1.5));
  CHECK(rel_close(solve_subset_dp(build_ring(6)).per_node[2], 1899.0 / 770));
  CHECK(rel_close(solve_subset_dp(build_ring(2)).per_node[0], 4.0 / 3));
}

TEST_CASE("star hub closed form, recursion and R_d") {
  CHECK(rel_close(star_node_age(1, 10), 7.5));
  CHECK(rel_close(rd_coefficient(1), 0.25));
  CHECK(rel_close(rd_coefficient(2), 10.0 / 27));
  CHECK(rel_close(rd_coefficient(3), 57.0 / 128));
  CHECK(floor2(rd_coefficient(3)) == doctest::Approx(0.44));
  CHECK(rel_close(age_reduction_Rd(2, 9), 9.0 * 10 / 27));
  CHECK(floor2(rd_coefficient(5)) + 2 * floor2(rd_coefficient(1)) == doctest::Approx(1.03));
  for (int n = 2; n <= 9; ++n)
    for (int d = 0; d < n; ++d) {
      const StarAges s = star_ages(d, 1.0 / n, 1.0 / n, 1.0);
      CHECK(rel_close(s.hub, star_node_age(d, n)));
      const auto exact = solve_subset_dp(build_star(d, n)).per_node;
      CHECK(rel_close(exact[0], s.hub));
      if (d >= 1) CHECK(rel_close(exact[1], s.leaf));
    }
  CHECK_THROWS_AS(rd_coefficient(0), DomainError);
}

TEST_CASE("published R_d coefficients") {
  const double table[] = {0.25, 0.37, 0.44, 0.49, 0.53, 0.56, 0.59, 0.61, 0.63, 0.64, 0.66,
                          0.67, 0.68, 0.69, 0.70, 0.71, 0.72, 0.72, 0.73, 0.74, 0.74, 0.75};
  for (int d = 1; d <= 22; ++d) {
    CAPTURE(d);
    CHECK(std::abs(floor2(rd_coefficient(d)) - table[d - 1]) < 1e-9);
  }
}

TEST_CASE("exponential product envelope") {
  const ProductBounds a = exp_product_bounds(1, 1);
  CHECK(rel_close(a.lower, std::exp(-1.0)));
  CHECK(rel_close(a.upper, std::exp(-0.25)));
  CHECK(rel_close(a.product, 0.5));
  const ProductBounds b = exp_product_bounds(10, 100);
  double p = 1.0;
  for (int k = 1; k <= 10; ++k) p /= 1.0 + k / 100.0;
  CHECK(rel_close(b.product, p));
  CHECK(b.lower <= p);
  CHECK(p <= b.upper);
  CHECK(rel_close(b.lower, std::exp(-1.0)));
  CHECK_THROWS_AS(exp_product_bounds(0, 5), DomainError);
  CHECK_THROWS_AS(exp_product_bounds(6, 5), DomainError);
}

TEST_CASE("scaling envelope") {
  const ScalingBounds b = ring_scaling_bounds(1e4, 0.3, 1.0);
  const double root = std::sqrt(std::numbers::pi / 2) * 100;
  CHECK(rel_close(b.lower, root + std::exp(-std::pow(10.0, 1.6) / 2) * std::pow(10.0, 1.2)));
  CHECK(rel_close(b.upper, std::pow(10.0, 1.2) + root + 1));
  const ScalingBounds hi = ring_scaling_bounds(1e6, 0.8, 1.0);
  CHECK(hi.lower == doctest::Approx(std::pow(1e6, 0.8)).epsilon(1e-3));
  for (double alpha : {0.0, 0.1, 0.3, 0.5, 0.7, 1.0})
    for (double c : {0.5, 1.0, 3.0})
      for (double n = 1; n <= 1e5; n *= 3.7) CHECK(ring_scaling_bounds(n, alpha, c).lower <= ring_scaling_bounds(n, alpha, c).upper);
  CHECK_THROWS_AS(ring_scaling_bounds(100, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(ring_scaling_bounds(100, -0.1, 1.0), DomainError);
}

TEST_CASE("subset recursion agrees with the absorption-time oracle") {
  auto rng = make_stream(21);
  for (int i = 0; i < 60; ++i) {
    const GossipNetwork g = random_connected_graph(rng, 1, 9).network;
    const auto expected = oracle::ctmc_ages(g);
    const auto dp = solve_subset_dp(g).per_node;
    const auto fast = solve(g).per_node;
    for (std::size_t v = 0; v < expected.size(); ++v) {
      CHECK(rel_close(dp[v], expected[v], 1e-9));
      CHECK(rel_close(fast[v], expected[v], 1e-9));
    }
  }
  // disconnected input with several shapes at once
  const auto jammed = apply_jammers(build_ring(10), JammerSet{{2, 3}, {6, 7}, {7, 8}});
  const auto expected = oracle::ctmc_ages(jammed);
  const auto got = solve(jammed).per_node;
  for (std::size_t v = 0; v < expected.size(); ++v) CHECK(rel_close(got[v], expected[v], 1e-9));
}

TEST_CASE("specialized solvers match the subset recursion") {
  auto rng = make_stream(22);
  int specialized = 0;
  for (int i = 0; i < 200; ++i) {
    const GossipNetwork g = random_connected_graph(rng, 1, 12).network;
    const auto comp = decompose(g).components.at(0);
    const auto fast = specialized_ages(g, comp);
    if (!fast) continue;
    ++specialized;
    const auto table = subset_age_table(g, comp.nodes);
    for (std::size_t k = 0; k < comp.nodes.size(); ++k) CHECK(rel_close((*fast)[k], table.at(1u << k)));
  }
  CHECK(specialized > 80);
}

TEST_CASE("non-uniform cliques and stars fall back to the subset recursion") {
  GossipNetwork g = build_fully_connected(4).with_link(1, 2, 0.9, 0.1);
  const auto comp = decompose(g).components.at(0);
  CHECK(comp.shape == Shape::clique);
  CHECK_FALSE(specialized_ages(g, comp).has_value());
  const auto a = solve(g).per_node;
  const auto b = oracle::ctmc_ages(g);
  for (std::size_t v = 0; v < a.size(); ++v) CHECK(rel_close(a[v], b[v], 1e-9));
}

TEST_CASE("component cap") {
  CHECK_THROWS_AS(solve_subset_dp(build_ring(9), {8}), ComponentTooLarge);
  try {
    solve_subset_dp(build_ring(25));
    FAIL("expected ComponentTooLarge");
  } catch (const ComponentTooLarge& e) {
    CHECK(std::string(e.what()).find("25 nodes") != std::string::npos);
  }
  // the dispatcher never needs the subset recursion for rings
  CHECK(rel_close(solve(build_ring(25)).per_node[0], ring_node_age(25, 25)));
}

TEST_CASE("set ages shrink as sets grow") {
  auto rng = make_stream(23);
  for (int i = 0; i < 10; ++i) {
    const GossipNetwork g = random_connected_graph(rng, 3, 8).network;
    std::vector<NodeId> all(static_cast<std::size_t>(g.size()));
    std::iota(all.begin(), all.end(), 1);
    const auto table = subset_age_table(g, all);
    const std::uint32_t full = (1u << g.size()) - 1u;
    for (std::uint32_t s = 1; s <= full; ++s)
      for (int b = 0; b < g.size(); ++b) CHECK(table.at(s | 1u << b) <= table.at(s) * (1 + 1e-12));
    const std::vector<NodeId> whole(all);
    double src = 0.0;
    for (double r : g.source_rates()) src += r;
    CHECK(rel_close(table.age_of(whole), g.lambda_s() / src));
  }
}

TEST_CASE("path ages are symmetric and smallest in the middle") {
  for (int n0 = 1; n0 <= 30; ++n0)
    for (int n : {n0, 3 * n0}) {
      const auto a = solve_path_interval_dp(n0, n);
      for (int i = 0; i < n0; ++i) CHECK(rel_close(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(n0 - 1 - i)]));
      for (int i = 0; 2 * (i + 1) <= n0 && i + 1 < n0; ++i)
        CHECK(a[static_cast<std::size_t>(i + 1)] <= a[static_cast<std::size_t>(i)] * (1 + 1e-12));
    }
  const auto nine = solve_path_interval_dp(9, 40);
  for (int i = 0; i < 4; ++i) CHECK(nine[static_cast<std::size_t>(i)] >= nine[static_cast<std::size_t>(i + 1)]);
}

TEST_CASE("ring and line sandwich") {
  for (int n0 = 1; n0 <= 60; ++n0)
    for (int n : {n0, 2 * n0, 500}) {
      if (n < n0) continue;
      const double ring = ring_node_age(n0, n);
      const double corner = line_corner_age(n0, n);
      const auto path = solve_path_interval_dp(n0, n);
      CHECK(rel_close(path.front(), corner));
      CHECK(corner <= 2 * ring);
      for (double a : path) CHECK(ring <= a * (1 + 1e-12));
    }
}

TEST_CASE("ring gap sequence decreases") {
  for (int n : {5, 17, 64, 300}) {
    double prev = INFINITY;
    for (int n0 = 1; n0 < n; ++n0) {
      const double f = n0 * ring_node_age(n0, n) - (n0 + 1) * ring_node_age(n0 + 1, n);
      // both terms are O(n0 n); the tail is flat up to cancellation error
      CHECK(f <= prev + 1e-14 * n0 * n);
      prev = f;
    }
  }
}

TEST_CASE("adding a link never raises an age") {
  auto rng = make_stream(24);
  for (int i = 0; i < 15; ++i) {
    const GossipNetwork g = random_connected_graph(rng, 2, 8).network;
    const auto before = solve_subset_dp(g).per_node;
    for (NodeId a = 1; a <= g.size(); ++a)
      for (NodeId b = a + 1; b <= g.size(); ++b) {
        if (g.has_link(a, b)) continue;
        const auto after = solve_subset_dp(g.with_link(a, b, 0.3, 0.05)).per_node;
        for (std::size_t v = 0; v < after.size(); ++v) CHECK(after[v] <= before[v] * (1 + 1e-12));
      }
  }
}

TEST_CASE("large rings use log-space products that match the table kernel") {
  const std::vector<int> sizes{1500, 4000, 10000};
  const RingAgeTable table(sizes, 10000);
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int n0 : {1, 2, 999, 1000, 1001, 1500, 3000}) {
      if (n0 > sizes[b] * 2) continue;
      CAPTURE(n0);
      CHECK(rel_close(table.age(n0, b), ring_node_age(n0, sizes[b])));
    }
  CHECK(std::isfinite(ring_node_age(10000, 10000)));
  CHECK(ring_node_age(10000, 10000) > 1.0);
}

TEST_CASE("dismembered ring models") {
  SUBCASE("all links cut") {
    for (auto model : {RingModel::line, RingModel::miniring}) {
      const AgeReport r = dismembered_ring_age(7, ring_adjacent(7, 7), model);
      for (double a : r.per_node) CHECK(rel_close(a, 7.0));
    }
  }
  SUBCASE("equidistant with divisible counts") {
    const AgeReport r = dismembered_ring_age(24, ring_equidistant(24, 4), RingModel::miniring);
    CHECK(rel_close(r.average, ring_node_age(6, 24)));
  }
  SUBCASE("adjacent cuts") {
    const int n = 30;
    const int t = 4;
    const AgeReport r = dismembered_ring_age(n, ring_adjacent(n, t), RingModel::miniring);
    const double expected = ((t - 1) * n + (n - t + 1) * ring_node_age(n - t + 1, n)) / n;
    CHECK(rel_close(r.average, expected));
  }
  SUBCASE("no cuts") {
    const AgeReport r = dismembered_ring_age(9, {}, RingModel::line);
    CHECK(rel_close(r.average, ring_node_age(9, 9)));
  }
  SUBCASE("line model equals the exact solver of the jammed ring") {
    auto rng = make_stream(25);
    for (int i = 0; i < 20; ++i) {
      const int n = uniform_int(rng, 3, 40);
      const JammerSet jam = ring_random(n, uniform_int(rng, 1, n), rng());
      const auto exact = solve(apply_jammers(build_ring(n), jam)).per_node;
      const auto model = dismembered_ring_age(n, jam, RingModel::line).per_node;
      for (std::size_t v = 0; v < exact.size(); ++v) CHECK(rel_close(exact[v], model[v]));
    }
  }
  CHECK_THROWS_AS(dismembered_ring_age(8, JammerSet{{1, 3}}, RingModel::line), ShapeError);
  CHECK(ring_segments(10, ring_equidistant(10, 3)) == std::vector<int>{3, 3, 4});
}

TEST_CASE("results do not depend on the SIMD level") {
  const GossipNetwork g = apply_jammers(build_ring(200), ring_equidistant(200, 7));
  const auto vec = solve(g).per_node;
  const auto line = solve_path_interval_dp(150, 900);
  auto stream = make_stream(8);
  const auto rng_g = random_connected_graph(stream, 12, 12).network;
  const auto sub = solve_subset_dp(rng_g).per_node;
  kernels::ScopedSimdLevel scalar(kernels::SimdLevel::scalar);
  CHECK(solve(g).per_node == vec);
  CHECK(solve_path_interval_dp(150, 900) == line);
  const auto sub_scalar = solve_subset_dp(rng_g).per_node;
  for (std::size_t v = 0; v < sub.size(); ++v) CHECK(rel_close(sub[v], sub_scalar[v], 1e-13));
}
