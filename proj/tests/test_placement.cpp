#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gossipjam/analytic.hpp"
#include "gossipjam/error.hpp"
#include "gossipjam/placement.hpp"

using namespace gossipjam;

namespace {

std::vector<int> sorted_segments(int n, const JammerSet& jam) {
  auto s = ring_segments(n, jam);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

TEST_CASE("equidistant placement balances segments") {
  CHECK(sorted_segments(12, ring_equidistant(12, 3)) == std::vector<int>{4, 4, 4});
  CHECK(sorted_segments(10, ring_equidistant(10, 3)) == std::vector<int>{4, 3, 3});
  CHECK(sorted_segments(6, ring_equidistant(6, 6)) == std::vector<int>(6, 1));
  for (int n = 3; n <= 60; ++n)
    for (int t = 1; t <= n; ++t) {
      const JammerSet jam = ring_equidistant(n, t);
      CHECK(jam.size() == static_cast<std::size_t>(t));
      const auto seg = ring_segments(n, jam);
      const auto [lo, hi] = std::minmax_element(seg.begin(), seg.end());
      CHECK(*hi - *lo <= 1);
    }
  CHECK_THROWS_AS(ring_equidistant(5, 6), DomainError);
  CHECK_THROWS_AS(ring_equidistant(2, 1), InvalidTopology);
}

TEST_CASE("adjacent placement") {
  const JammerSet jam = ring_adjacent(8, 3);
  CHECK(jam.contains(1, 2));
  CHECK(jam.contains(2, 3));
  CHECK(jam.contains(3, 4));
  const auto d = decompose(apply_jammers(build_ring(8), jam));
  CHECK(d.count(Shape::isolated) == 2);
  for (const auto& c : d.components) {
    if (c.shape == Shape::isolated) CHECK((c.nodes[0] == 2 || c.nodes[0] == 3));
    if (c.shape == Shape::path) {
      CHECK(std::set<NodeId>(c.nodes.begin(), c.nodes.end()) == std::set<NodeId>{4, 5, 6, 7, 8, 1});
    }
  }
  CHECK(sorted_segments(9, ring_adjacent(9, 1)) == std::vector<int>{9});
  CHECK(sorted_segments(5, ring_adjacent(5, 5)) == std::vector<int>(5, 1));
}

TEST_CASE("random placement is seeded, distinct and uniform") {
  CHECK(ring_random(20, 7, 42) == ring_random(20, 7, 42));
  CHECK_FALSE(ring_random(20, 7, 42) == ring_random(20, 7, 43));
  CHECK(ring_random(9, 9, 5) == ring_adjacent(9, 9));
  CHECK(ring_random(30, 12, 1).size() == 12);
  // each of the C(5,2) = 10 subsets of two links out of five about equally often
  std::map<std::vector<NodePair>, int> freq;
  const int draws = 20000;
  for (int s = 0; s < draws; ++s) ++freq[ring_random(5, 2, static_cast<std::uint64_t>(s)).cuts()];
  CHECK(freq.size() == 10);
  for (const auto& [cuts, count] : freq) CHECK(std::abs(count - draws / 10) < 5 * std::sqrt(draws * 0.1 * 0.9));
}

TEST_CASE("greedy consolidation") {
  {
    const auto [plan, jam] = fc_greedy(6, 12);
    CHECK(plan.k == 3);
    CHECK(plan.c == 0);
    CHECK(plan.steps == 3);
    CHECK(jam.size() == 12);
    const auto d = decompose(apply_jammers(build_fully_connected(6), jam));
    CHECK(d.count(Shape::clique) == 1);
    CHECK(d.count(Shape::isolated) == 3);
  }
  {
    const auto [plan, jam] = fc_greedy(6, 0);
    CHECK(plan.k == 6);
    CHECK(plan.c == 0);
    CHECK(jam.empty());
  }
  {
    const auto [plan, jam] = fc_greedy(6, 11);
    CHECK(plan.k == 3);
    CHECK(plan.c == 1);
    CHECK(plan.steps == 4);
    CHECK(choose2(3) + 1 == 4);
    CHECK_FALSE(jam.contains(1, 4));
    CHECK(jam.contains(2, 4));
  }
  for (int n = 1; n <= 20; ++n)
    for (std::int64_t t = 0; t <= choose2(n); ++t) {
      const GreedyPlan g = greedy_plan(n, t);
      const std::int64_t n_bar = choose2(n) - t;
      CHECK(choose2(g.k) + g.c == n_bar);
      CHECK(g.c < std::max(g.k, 1));
      CHECK(choose2(g.steps - 1) <= n_bar);
      CHECK(n_bar <= choose2(g.steps));
    }
  CHECK_THROWS_AS(fc_greedy(5, 11), DomainError);
}

TEST_CASE("cluster placement") {
  const JammerSet jam = fc_clusters(8, 3, 2);
  const auto d = decompose(apply_jammers(build_fully_connected(8), jam));
  CHECK(d.count(Shape::clique) == 2);
  CHECK(d.count(Shape::isolated) == 2);
  // one cluster equals the greedy plan with the same link budget
  CHECK(fc_clusters(7, 4, 1) == fc_greedy(7, choose2(7) - choose2(4)).second);
  // two 3-cliques age more slowly than one 4-clique with the same six links
  const double clustered = 6 * mini_fc_age(3, 8).per_node + 2 * 8.0;
  CHECK(clustered <= mini_fc_age(4, 8).total);
  CHECK(solve(apply_jammers(build_fully_connected(8), jam)).total ==
        doctest::Approx(clustered).epsilon(1e-12));
  CHECK_THROWS_AS(fc_clusters(8, 3, 3), DomainError);
}

TEST_CASE("configuration enumeration") {
  std::uint64_t total = 0;
  for (int k = 1; k <= 6; ++k) {
    ConfigEnumerator e(6, static_cast<int>(choose2(k)));
    std::uint64_t seen = 0;
    std::set<std::vector<NodePair>> distinct;
    while (auto c = e.next()) {
      ++seen;
      CHECK(c->size() == static_cast<std::size_t>(choose2(k)));
      distinct.insert(*c);
    }
    CHECK(seen == e.count());
    CHECK(distinct.size() == seen);
    total += seen;
  }
  CHECK(total == 8480);
  ConfigEnumerator empty(6, 0);
  CHECK(empty.next()->empty());
  CHECK_FALSE(empty.next().has_value());
  try {
    ConfigEnumerator big(9, 10);
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("254186856") != std::string::npos);
  }
  CHECK(binomial(36, 10) == 254186856u);
}

TEST_CASE("three links among six nodes: the triangle is worst") {
  ConfigEnumerator e(6, 3);
  double best = 0.0;
  std::vector<NodePair> arg;
  while (auto c = e.next()) {
    const double avg = solve(build_from_pairs(6, *c, 1.0 / 6)).average;
    if (avg > best) {
      best = avg;
      arg = *c;
    }
  }
  const auto d = decompose(build_from_pairs(6, arg, 1.0 / 6));
  CHECK(d.count(Shape::clique) == 1);
}

TEST_CASE("moving a cut toward a corner raises the mini-ring total") {
  for (int n0 = 2; n0 <= 60; ++n0) {
    double prev = INFINITY;
    for (int m = 1; 2 * m <= n0; ++m) {
      const double total = m * ring_node_age(m, 4 * n0) + (n0 - m) * ring_node_age(n0 - m, 4 * n0);
      CHECK(total <= prev * (1 + 1e-12));
      prev = total;
    }
  }
}

TEST_CASE("placements order as adjacent, random, equidistant") {
  for (int n = 3; n <= 120; n += 13)
    for (int t = 1; t <= n; t += 3)
      for (auto model : {RingModel::miniring, RingModel::line}) {
        const double adj = dismembered_ring_age(n, ring_adjacent(n, t), model).average;
        const double rnd = dismembered_ring_age(n, ring_random(n, t, 77u + n + t), model).average;
        const double eq = dismembered_ring_age(n, ring_equidistant(n, t), model).average;
        CHECK(adj >= rnd * (1 - 1e-12));
        CHECK(rnd >= eq * (1 - 1e-12));
      }
}
