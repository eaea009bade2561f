#include "gossipjam/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "gossipjam/error.hpp"
#include "gossipjam/io.hpp"
#include "gossipjam/random.hpp"
#include "gossipjam/simulator.hpp"

namespace gossipjam {

using nlohmann::json;

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::adjacent: return "adjacent";
    case Strategy::equidistant: return "equidistant";
    case Strategy::random: return "random";
    case Strategy::greedy: return "greedy";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "adjacent") return Strategy::adjacent;
  if (name == "equidistant") return Strategy::equidistant;
  if (name == "random") return Strategy::random;
  if (name == "greedy") return Strategy::greedy;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

std::int64_t jammer_count(double n, double alpha, double c) {
  const double x = c * std::pow(n, alpha);
  const double r = std::round(x);
  // pow can land a hair below an exact integer such as 8^(1/3)^3
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(x));
}

std::vector<int> ring_grid(double alpha, double c, int n_max, int points) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("ring sweeps need alpha in [0, 1]");
  if (!(c > 0.0)) throw DomainError("c must be positive");
  if (n_max < 3) throw DomainError("n_max must be >= 3");
  points = std::max(points, 2);
  std::vector<int> grid;
  if (alpha == 0.0) {
    for (int i = 0; i < points; ++i) {
      const int n = static_cast<int>(
          std::lround(3.0 * std::pow(n_max / 3.0, static_cast<double>(i) / (points - 1))));
      if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
    return grid;
  }
  const std::int64_t top = jammer_count(n_max, alpha, c);
  std::vector<std::int64_t> counts;
  if (top <= points) {
    for (std::int64_t t = 1; t <= top; ++t) counts.push_back(t);
  } else {
    for (int i = 0; i < points; ++i) {
      const auto t = static_cast<std::int64_t>(
          std::llround(std::pow(static_cast<double>(top), static_cast<double>(i) / (points - 1))));
      if (counts.empty() || t > counts.back()) counts.push_back(t);
    }
  }
  for (std::int64_t t : counts) {
    auto n = static_cast<std::int64_t>(std::ceil(std::pow(t / c, 1.0 / alpha) - 1e-9));
    n = std::max<std::int64_t>(n, 1);
    while (jammer_count(static_cast<double>(n), alpha, c) < t) ++n;
    while (n > 1 && jammer_count(static_cast<double>(n - 1), alpha, c) >= t) --n;
    if (n < 3 || n > n_max || t > n) continue;
    if (grid.empty() || n > grid.back()) grid.push_back(static_cast<int>(n));
  }
  return grid;
}

bool RingSweep::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const RingRow& r) { return r.violations.empty(); });
}

namespace {

SimConfig sweep_sim_config(const SweepSpec& spec, int n, std::uint64_t seed) {
  SimConfig cfg;
  cfg.warmup = spec.warmup.value_or(15.0 * n);
  cfg.horizon = spec.horizon.value_or(*cfg.warmup + 50.0 * n);
  cfg.seed = seed;
  cfg.replications = spec.replications;
  cfg.threads = spec.threads;
  return cfg;
}

std::uint64_t row_seed(std::uint64_t seed, int n) { return seed + static_cast<std::uint64_t>(n); }

// keeps the simulation streams apart from the placement stream
constexpr std::uint64_t sim_seed_offset = 0x9e3779b97f4a7c15ull;

JammerSet ring_placement(Strategy s, int n, int t, std::uint64_t seed) {
  switch (s) {
    case Strategy::adjacent: return ring_adjacent(n, t);
    case Strategy::equidistant: return ring_equidistant(n, t);
    case Strategy::random: return ring_random(n, t, seed);
    case Strategy::greedy: break;
  }
  throw ConfigError("greedy is not a ring strategy");
}

void check_row(RingRow& row) {
  auto fail = [&](const std::string& what) { row.violations.push_back(what); };
  constexpr double rel = 1e-12;
  if (row.age_line && row.age_miniring) {
    const double l = *row.age_line;
    const double r = *row.age_miniring;
    if (r > l * (1 + rel)) fail("miniring " + format_number(r) + " > line " + format_number(l));
    if (l > 2 * r * (1 + rel)) fail("line " + format_number(l) + " > 2*miniring " + format_number(2 * r));
  }
  if (row.lower_bound && row.age_miniring && *row.lower_bound > *row.age_miniring * (1 + rel))
    fail("lower bound " + format_number(*row.lower_bound) + " > miniring " +
         format_number(*row.age_miniring));
  if (row.upper_bound && row.age_line && *row.age_line > *row.upper_bound * (1 + rel))
    fail("line " + format_number(*row.age_line) + " > upper bound " + format_number(*row.upper_bound));
}

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

RingSweep sweep_ring(const SweepSpec& spec) {
  if (spec.strategies.empty()) throw ConfigError("no ring strategy selected");
  for (Strategy s : spec.strategies)
    if (s == Strategy::greedy) throw ConfigError("greedy is not a ring strategy");
  std::vector<int> grid = spec.n_values.empty()
                              ? ring_grid(spec.alpha, spec.c, spec.n_max, spec.points)
                              : spec.n_values;
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw ConfigError("n values must be strictly increasing");

  RingSweep sweep;
  std::vector<int> kept;
  std::vector<int> counts;
  for (int n : grid) {
    const std::int64_t t = jammer_count(n, spec.alpha, spec.c);
    if (n < 3 || t < 1 || t > n) {
      sweep.diagnostics.push_back("n=" + std::to_string(n) + ": " + std::to_string(t) +
                                  " jammers infeasible on a ring, row skipped");
      continue;
    }
    kept.push_back(n);
    counts.push_back(static_cast<int>(t));
  }
  if (kept.empty()) return sweep;

  const RingAgeTable ring_table(kept, kept.back(), spec.rates);
  const double ratio = spec.rates.lambda_s / spec.rates.lambda;
  for (std::size_t b = 0; b < kept.size(); ++b) {
    const int n = kept[b];
    const int t = counts[b];
    for (Strategy s : spec.strategies) {
      RingRow row;
      row.n = n;
      row.n_jammers = t;
      row.strategy = s;
      row.seed = row_seed(spec.seed, n);
      const JammerSet jam = ring_placement(s, n, t, row.seed);
      if (spec.analytic_line)
        row.age_line = dismembered_ring_age(n, jam, RingModel::line, spec.rates).average;
      if (spec.analytic_miniring) {
        double total = 0.0;
        for (int len : ring_segments(n, jam)) total += len * ring_table.age(len, b);
        if (jam.empty()) total = n * ring_table.age(n, b);
        row.age_miniring = total / n;
      }
      if (spec.bounds) {
        const ScalingBounds bnd = ring_scaling_bounds(n, spec.alpha, spec.c);
        row.lower_bound = ratio * bnd.lower;
        row.upper_bound = ratio * bnd.upper;
      }
      if (spec.simulation && n <= spec.sim_max) {
        const GossipNetwork net = apply_jammers(build_ring(n, spec.rates), jam);
        const SimResult sim = simulate(net, sweep_sim_config(spec, n, row.seed + sim_seed_offset));
        row.age_sim = sim.average;
        row.sim_stderr = sim.average_std_error;
      }
      check_row(row);
      sweep.rows.push_back(std::move(row));
    }
  }
  return sweep;
}

std::string ring_sweep_csv(const RingSweep& sweep) {
  std::string out = "n,n_jammers,strategy,age_line,age_miniring,age_sim,sim_stderr,lower_bound,upper_bound,seed\n";
  for (const auto& r : sweep.rows)
    out += std::to_string(r.n) + "," + std::to_string(r.n_jammers) + "," + to_string(r.strategy) +
           "," + cell(r.age_line) + "," + cell(r.age_miniring) + "," + cell(r.age_sim) + "," +
           cell(r.sim_stderr) + "," + cell(r.lower_bound) + "," + cell(r.upper_bound) + "," +
           std::to_string(r.seed) + "\n";
  return out;
}

std::string ring_sweep_json(const RingSweep& sweep) {
  json rows = json::array();
  for (const auto& r : sweep.rows)
    rows.push_back({{"n", r.n},
                    {"n_jammers", r.n_jammers},
                    {"strategy", to_string(r.strategy)},
                    {"age_line", opt_json(r.age_line)},
                    {"age_miniring", opt_json(r.age_miniring)},
                    {"age_sim", opt_json(r.age_sim)},
                    {"sim_stderr", opt_json(r.sim_stderr)},
                    {"lower_bound", opt_json(r.lower_bound)},
                    {"upper_bound", opt_json(r.upper_bound)},
                    {"seed", r.seed},
                    {"violations", r.violations}});
  return json{{"rows", rows}, {"diagnostics", sweep.diagnostics}}.dump(2) + "\n";
}

FcSweep sweep_fc(const SweepSpec& spec) {
  if (spec.fc_rule == FcRule::power && !(spec.alpha > 1.0 && spec.alpha <= 2.0))
    throw DomainError("power rule needs alpha in (1, 2]");
  if (spec.fc_rule == FcRule::power && !(spec.c > 0.0)) throw DomainError("c must be positive");
  std::vector<int> grid = spec.n_values;
  if (grid.empty())
    for (int n = 2; n <= spec.n_max; ++n) grid.push_back(n);
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw ConfigError("n values must be strictly increasing");

  FcSweep sweep;
  const bool explicit_grid = !spec.n_values.empty();
  for (int n : grid) {
    if (n < 2) continue;
    const std::int64_t t = spec.fc_rule == FcRule::n_log_n
                               ? static_cast<std::int64_t>(std::floor(n * std::log(static_cast<double>(n))))
                               : jammer_count(n, spec.alpha, spec.c);
    if (t > choose2(n)) {
      if (explicit_grid)
        sweep.diagnostics.push_back("n=" + std::to_string(n) + ": " + std::to_string(t) +
                                    " jammers exceed the link count, row skipped");
      continue;
    }
    const GreedyPlan plan = greedy_plan(n, t);
    if (plan.c != 0) {
      if (explicit_grid)
        sweep.diagnostics.push_back("n=" + std::to_string(n) + ": greedy plan leaves " +
                                    std::to_string(plan.c) + " extra links, row skipped");
      continue;
    }
    FcRow row;
    row.n = n;
    row.n_jammers = t;
    row.k = plan.k;
    row.leftover = plan.c;
    row.seed = row_seed(spec.seed, n);
    row.age_analytic = mini_fc_age(plan.k, n, spec.rates).total / n;
    if (spec.simulation && n <= spec.sim_max) {
      const SimResult sim =
          simulate(build_mini_fc(plan.k, n, spec.rates), sweep_sim_config(spec, n, row.seed + sim_seed_offset));
      row.age_sim = sim.average;
      row.sim_stderr = sim.average_std_error;
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

std::string fc_sweep_csv(const FcSweep& sweep) {
  std::string out = "n,n_jammers,strategy,k,leftover,age_analytic,age_sim,sim_stderr,seed\n";
  for (const auto& r : sweep.rows)
    out += std::to_string(r.n) + "," + std::to_string(r.n_jammers) + ",greedy," +
           std::to_string(r.k) + "," + std::to_string(r.leftover) + "," +
           format_number(r.age_analytic) + "," + cell(r.age_sim) + "," + cell(r.sim_stderr) + "," +
           std::to_string(r.seed) + "\n";
  return out;
}

std::string fc_sweep_json(const FcSweep& sweep) {
  json rows = json::array();
  for (const auto& r : sweep.rows)
    rows.push_back({{"n", r.n},
                    {"n_jammers", r.n_jammers},
                    {"strategy", "greedy"},
                    {"k", r.k},
                    {"leftover", r.leftover},
                    {"age_analytic", r.age_analytic},
                    {"age_sim", opt_json(r.age_sim)},
                    {"sim_stderr", opt_json(r.sim_stderr)},
                    {"seed", r.seed}});
  return json{{"rows", rows}, {"diagnostics", sweep.diagnostics}}.dump(2) + "\n";
}

bool Enumeration::ok() const {
  return std::all_of(groups.begin(), groups.end(), [](const EnumGroup& g) { return g.greedy_is_max; });
}

Enumeration enumerate_scored(int n, const std::vector<int>& n_bars, Rates rates) {
  Enumeration e;
  std::uint64_t id = 0;
  const double link_rate = rates.lambda / n;
  for (int n_bar : n_bars) {
    ConfigEnumerator configs(n, n_bar);
    EnumGroup group;
    group.n_bar = n_bar;
    group.max_average = -1.0;
    while (auto links = configs.next()) {
      const AgeReport report = solve(build_from_pairs(n, *links, link_rate, rates));
      group.max_average = std::max(group.max_average, report.average);
      ++group.count;
      e.rows.push_back({++id, n_bar, std::move(*links), report.total, report.average});
    }
    const GreedyPlan plan = greedy_plan(n, choose2(n) - n_bar);
    group.greedy_average = solve(build_from_pairs(n, greedy_links(plan), link_rate, rates)).average;
    group.greedy_is_max = group.greedy_average >= group.max_average * (1.0 - 1e-12);
    e.groups.push_back(group);
  }
  return e;
}

Enumeration enumerate_n6(Rates rates) {
  std::vector<int> n_bars;
  for (int k = 1; k <= 6; ++k) n_bars.push_back(static_cast<int>(choose2(k)));
  return enumerate_scored(6, n_bars, rates);
}

std::string enumeration_csv(const Enumeration& e) {
  std::string out = "config_id,links,total_age,average_age\n";
  for (const auto& r : e.rows) {
    std::string links;
    for (const auto& p : r.links) {
      if (!links.empty()) links += ';';
      links += std::to_string(p.lo) + "-" + std::to_string(p.hi);
    }
    out += std::to_string(r.config_id) + "," + links + "," + format_number(r.total) + "," +
           format_number(r.average) + "\n";
  }
  return out;
}

namespace {

bool is_single_clique_plus_isolated(const GossipNetwork& net, int clique_size) {
  int big = 0;
  for (const auto& comp : decompose(net).components) {
    if (comp.nodes.size() == 1) continue;
    if (++big > 1) return false;
    const auto m = static_cast<std::int64_t>(comp.nodes.size());
    if (m != clique_size || static_cast<std::int64_t>(comp.link_count) != choose2(m)) return false;
  }
  return big == 1;
}

}  // namespace

std::vector<AttachmentCase> attachment_search(int n_max, int k_max, Rates rates) {
  std::vector<AttachmentCase> cases;
  for (int n = 2; n <= n_max; ++n)
    for (int k = 1; k <= k_max && k + 1 <= n; ++k) {
      const double link_rate = rates.lambda / n;
      std::vector<NodePair> base;
      std::vector<NodePair> absent;
      for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = i + 1; j <= n; ++j) (j <= k ? base : absent).push_back({i, j});

      // enumerate k-subsets of the absent pairs through index combinations
      AttachmentCase ac;
      ac.n = n;
      ac.k = k;
      std::vector<std::pair<double, std::vector<NodePair>>> scored;
      std::vector<int> idx(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
      const int total = static_cast<int>(absent.size());
      if (total < k) continue;
      for (;;) {
        std::vector<NodePair> links = base;
        for (int i : idx) links.push_back(absent[static_cast<std::size_t>(i)]);
        const double age = solve(build_from_pairs(n, links, link_rate, rates)).total;
        scored.emplace_back(age, std::move(links));
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == total - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q)
          idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
      }
      ac.configs = scored.size();
      for (const auto& [age, links] : scored) ac.best_total = std::max(ac.best_total, age);
      ac.maximizers_are_attachments = true;
      for (const auto& [age, links] : scored) {
        if (age < ac.best_total * (1.0 - 1e-10)) continue;
        ++ac.maximizers;
        if (!is_single_clique_plus_isolated(build_from_pairs(n, links, link_rate, rates), k + 1))
          ac.maximizers_are_attachments = false;
      }
      cases.push_back(ac);
    }
  return cases;
}

const std::vector<double>& published_rd_table() {
  static const std::vector<double> table{0.25, 0.37, 0.44, 0.49, 0.53, 0.56, 0.59, 0.61,
                                         0.63, 0.64, 0.66, 0.67, 0.68, 0.69, 0.70, 0.71,
                                         0.72, 0.72, 0.73, 0.74, 0.74, 0.75};
  return table;
}

bool VerifyReport::ok() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.failures == 0; });
}

namespace {

class Property {
 public:
  explicit Property(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& context) {
    ++result_.cases;
    if (ok) return;
    if (result_.failures++ == 0) result_.first_failure = context();
  }
  PropertyResult done() { return std::move(result_); }

 private:
  PropertyResult result_;
};

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::string ctx(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += (s.empty() ? "" : " ") + std::string(k) + "=" + format_number(v);
  return s;
}

PropertyResult check_path_shape(int n0_max) {
  Property p("path_center_minimal_and_symmetric");
  for (int n0 = 1; n0 <= n0_max; ++n0)
    for (int n : {n0, 2 * n0, 10 * n0}) {
      const auto a = solve_path_interval_dp(n0, n);
      for (int i = 1; i <= n0; ++i) {
        const double x = a[static_cast<std::size_t>(i - 1)];
        p.check(close(x, a[static_cast<std::size_t>(n0 - i)], 1e-10),
                [&] { return ctx({{"n0", n0}, {"n", n}, {"i", i}}) + " mirror"; });
        if (2 * i <= n0 && i < n0)
          p.check(a[static_cast<std::size_t>(i)] <= x * (1 + 1e-12),
                  [&] { return ctx({{"n0", n0}, {"n", n}, {"i", i}}) + " not decreasing"; });
      }
    }
  return p.done();
}

PropertyResult check_sandwich(int n0_max, int n_max) {
  Property p("ring_path_sandwich");
  for (int n0 = 1; n0 <= n0_max; ++n0) {
    std::set<int> ns{n0, 2 * n0, 10 * n0};
    for (int n = 100; n <= n_max; n *= 10) ns.insert(n);
    for (int n : ns) {
      if (n < n0 || n > std::max(n_max, 10 * n0)) continue;
      const double ring = ring_node_age(n0, n);
      const double corner = line_corner_age(n0, n);
      const auto path = solve_path_interval_dp(n0, n);
      for (std::size_t i = 0; i < path.size(); ++i)
        p.check(ring <= path[i] * (1 + 1e-12) && path[i] <= corner * (1 + 1e-12),
                [&] { return ctx({{"n0", n0}, {"n", n}, {"i", static_cast<double>(i + 1)}}); });
      p.check(close(corner, path.front(), 1e-10) && corner <= 2 * ring * (1 + 1e-12),
              [&] { return ctx({{"n0", n0}, {"n", n}}) + " corner"; });
    }
  }
  return p.done();
}

PropertyResult check_ring_gap(int n_max) {
  Property p("ring_gap_decreasing");
  for (int n = 3; n <= n_max; n = n < 50 ? n + 1 : n * 2) {
    const RingAgeTable table({n}, n);
    double prev = 0.0;
    for (int n0 = 1; n0 < n; ++n0) {
      const double f = n0 * table.age(n0, 0) - (n0 + 1) * table.age(n0 + 1, 0);
      if (n0 > 1)
        // the tail is flat up to cancellation error in two O(n0 n) terms
        p.check(f <= prev + 1e-14 * n0 * n, [&] { return ctx({{"n", n}, {"n0", n0}}); });
      prev = f;
    }
  }
  return p.done();
}

PropertyResult check_cut_position(int n0_max) {
  Property p("cut_toward_corner_raises_age");
  for (int n0 = 2; n0 <= n0_max; ++n0)
    for (int n : {n0, 10 * n0}) {
      double prev = 0.0;
      for (int m = 1; 2 * m <= n0; ++m) {
        const double total = m * ring_node_age(m, n) + (n0 - m) * ring_node_age(n0 - m, n);
        if (m > 1)
          p.check(total <= prev * (1 + 1e-12), [&] { return ctx({{"n0", n0}, {"n", n}, {"m", m}}); });
        prev = total;
      }
    }
  return p.done();
}

PropertyResult check_link_addition(int graphs, std::uint64_t seed) {
  Property p("link_addition_never_raises_age");
  auto rng = make_stream(seed, 1);
  for (int g = 0; g < graphs; ++g) {
    const GossipNetwork net = random_connected_graph(rng, 2, 10).network;
    const AgeReport before = solve_subset_dp(net);
    for (NodeId i = 1; i <= net.size(); ++i)
      for (NodeId j = i + 1; j <= net.size(); ++j) {
        if (net.has_link(i, j)) continue;
        const double r = uniform_real(rng, 0.2, 2.0) / net.size();
        const AgeReport after = solve_subset_dp(net.with_link(i, j, r, r));
        for (std::size_t v = 0; v < before.per_node.size(); ++v)
          p.check(after.per_node[v] <= before.per_node[v] * (1 + 1e-12),
                  [&] { return ctx({{"graph", g}, {"i", i}, {"j", j}, {"node", static_cast<double>(v + 1)}}); });
      }
  }
  return p.done();
}

PropertyResult check_monotone_sets(int graphs, std::uint64_t seed) {
  Property p("superset_age_not_larger");
  auto rng = make_stream(seed, 2);
  for (int g = 0; g < graphs; ++g) {
    const GossipNetwork net = random_connected_graph(rng, 2, 8).network;
    std::vector<NodeId> all(static_cast<std::size_t>(net.size()));
    for (int i = 0; i < net.size(); ++i) all[static_cast<std::size_t>(i)] = i + 1;
    const auto table = subset_age_table(net, all);
    const std::uint32_t full = (1u << net.size()) - 1u;
    for (std::uint32_t s = 1; s < full; ++s)
      for (int b = 0; b < net.size(); ++b) {
        const std::uint32_t sup = s | (1u << b);
        if (sup == s) continue;
        p.check(table.at(sup) <= table.at(s) * (1 + 1e-12),
                [&] { return ctx({{"graph", g}, {"mask", s}, {"bit", b}}); });
      }
  }
  return p.done();
}

PropertyResult check_oracle(int graphs, int max_nodes, std::uint64_t seed) {
  Property p("specialized_solvers_match_subset_recursion");
  auto rng = make_stream(seed, 3);
  for (int g = 0; g < graphs; ++g) {
    const GossipNetwork net = random_connected_graph(rng, 1, max_nodes).network;
    const AgeReport exact = solve_subset_dp(net);
    const AgeReport fast = solve(net);
    for (std::size_t v = 0; v < exact.per_node.size(); ++v)
      p.check(close(exact.per_node[v], fast.per_node[v], 1e-10),
              [&] { return ctx({{"graph", g}, {"node", static_cast<double>(v + 1)}}); });
  }
  return p.done();
}

PropertyResult check_closed_forms(int n_max) {
  Property p("closed_forms_match_subset_recursion");
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      const double exact = solve_subset_dp(build_mini_fc(k, n)).total;
      p.check(close(exact, mini_fc_age(k, n).total, 1e-10), [&] { return ctx({{"n", n}, {"k", k}}) + " mini-FC"; });
    }
    for (int d = 0; d + 1 <= n; ++d) {
      const double exact = solve_subset_dp(build_star(d, n)).per_node[0];
      p.check(close(exact, star_node_age(d, n), 1e-10), [&] { return ctx({{"n", n}, {"d", d}}) + " star"; });
    }
    for (int n0 = 1; n0 <= n; ++n0) {
      const auto exact = solve_subset_dp(build_line(n0, n)).per_node;
      const auto dp = solve_path_interval_dp(n0, n);
      for (int i = 0; i < n0; ++i)
        p.check(close(exact[static_cast<std::size_t>(i)], dp[static_cast<std::size_t>(i)], 1e-10),
                [&] { return ctx({{"n", n}, {"n0", n0}, {"i", i + 1}}) + " line"; });
    }
    if (n >= 2) {
      const double exact = solve_subset_dp(build_ring(n)).per_node[0];
      p.check(close(exact, ring_node_age(n, n), 1e-10), [&] { return ctx({{"n", n}}) + " ring"; });
    }
  }
  return p.done();
}

PropertyResult check_rd_table() {
  Property p("rd_table");
  const auto& table = published_rd_table();
  double prev = 0.0;
  for (int d = 1; d <= static_cast<int>(table.size()); ++d) {
    const double coeff = rd_coefficient(d);
    p.check(std::abs(floor2(coeff) - table[static_cast<std::size_t>(d - 1)]) < 1e-9,
            [&] { return ctx({{"d", d}, {"coefficient", coeff}}); });
    p.check(coeff > prev, [&] { return ctx({{"d", d}}) + " not increasing"; });
    prev = coeff;
  }
  return p.done();
}

PropertyResult check_consolidation(int n_max) {
  Property p("single_clique_beats_clusters");
  for (int k = 3; k <= n_max; ++k) {
    const std::int64_t budget = choose2(k);
    const double single = mini_fc_age(k, n_max).total;
    for (int kb = 2; kb < k; ++kb) {
      if (budget % choose2(kb) != 0) continue;
      const std::int64_t mb = budget / choose2(kb);
      if (mb * kb > n_max) continue;
      const double per = mini_fc_age(kb, n_max).per_node;
      const double clustered = static_cast<double>(mb * kb) * per +
                               static_cast<double>(n_max - mb * kb) * n_max;
      p.check(single >= clustered * (1 - 1e-12),
              [&] { return ctx({{"k", k}, {"k_bar", kb}, {"m_bar", static_cast<double>(mb)}}); });
    }
  }
  return p.done();
}

PropertyResult check_ring_ordering(std::uint64_t seed) {
  Property p("adjacent_random_equidistant_order");
  for (int n = 3; n <= 200; n += 7)
    for (int t = 1; t <= n; t += std::max(1, n / 9)) {
      const double adj = dismembered_ring_age(n, ring_adjacent(n, t), RingModel::miniring).average;
      const double eq = dismembered_ring_age(n, ring_equidistant(n, t), RingModel::miniring).average;
      const double rnd =
          dismembered_ring_age(n, ring_random(n, t, seed + static_cast<std::uint64_t>(n * 1000 + t)), RingModel::miniring)
              .average;
      p.check(adj >= rnd * (1 - 1e-12) && rnd >= eq * (1 - 1e-12),
              [&] { return ctx({{"n", n}, {"n_tilde", t}}); });
    }
  return p.done();
}

PropertyResult check_greedy_plans(int n_max) {
  Property p("greedy_plan_arithmetic");
  for (int n = 1; n <= n_max; ++n)
    for (std::int64_t t = 0; t <= choose2(n); ++t) {
      const GreedyPlan g = greedy_plan(n, t);
      const std::int64_t n_bar = choose2(n) - t;
      p.check(choose2(g.k) + g.c == n_bar && g.c >= 0 && g.c < std::max(g.k, 1) &&
                  choose2(g.steps - 1) <= n_bar && n_bar <= choose2(g.steps) &&
                  static_cast<std::int64_t>(greedy_links(g).size()) == n_bar,
              [&] { return ctx({{"n", n}, {"n_tilde", static_cast<double>(t)}}); });
    }
  return p.done();
}

PropertyResult check_product_bounds(int n_max) {
  Property p("exponential_product_envelope");
  for (int n = 1; n <= n_max; n = n < 100 ? n + 1 : n + n / 7)
    for (int j = 1; j <= n; j = j < 50 ? j + 1 : j + j / 5) {
      const ProductBounds b = exp_product_bounds(j, n);
      p.check(b.lower <= b.product * (1 + 1e-12) && b.product <= b.upper * (1 + 1e-12),
              [&] { return ctx({{"j", j}, {"n", n}}); });
    }
  return p.done();
}

PropertyResult check_attachment(int n_max, int k_max) {
  Property p("single_node_attachment_maximizes");
  for (const auto& c : attachment_search(n_max, k_max))
    p.check(c.maximizers_are_attachments, [&] { return ctx({{"n", c.n}, {"k", c.k}}); });
  return p.done();
}

PropertyResult check_census() {
  Property p("greedy_maximal_in_n6_census");
  const Enumeration e = enumerate_n6();
  p.check(e.rows.size() == 8480, [&] { return ctx({{"rows", static_cast<double>(e.rows.size())}}); });
  for (const auto& g : e.groups)
    p.check(g.greedy_is_max, [&] { return ctx({{"n_bar", g.n_bar}}); });
  return p.done();
}

}  // namespace

VerifyReport verify_properties(VerifyLevel level, std::uint64_t seed) {
  const bool full = level == VerifyLevel::full;
  VerifyReport r;
  r.properties.push_back(check_rd_table());
  r.properties.push_back(check_path_shape(50));
  r.properties.push_back(check_sandwich(full ? 200 : 60, full ? 10000 : 1000));
  r.properties.push_back(check_ring_gap(full ? 10000 : 1000));
  r.properties.push_back(check_cut_position(60));
  r.properties.push_back(check_link_addition(50, seed));
  r.properties.push_back(check_monotone_sets(20, seed));
  r.properties.push_back(check_oracle(100, full ? 12 : 10, seed));
  r.properties.push_back(check_closed_forms(full ? 10 : 8));
  r.properties.push_back(check_consolidation(full ? 1000 : 200));
  r.properties.push_back(check_ring_ordering(seed));
  r.properties.push_back(check_greedy_plans(full ? 60 : 25));
  if (full) {
    r.properties.push_back(check_product_bounds(10000));
    r.properties.push_back(check_attachment(7, 4));
    r.properties.push_back(check_census());
  }
  return r;
}

std::string verify_report_json(const VerifyReport& report) {
  json props = json::array();
  for (const auto& p : report.properties) {
    json entry = {{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"passed", p.failures == 0}};
    if (p.failures) entry["first_failure"] = p.first_failure;
    props.push_back(entry);
  }
  return json{{"passed", report.ok()}, {"properties", props}}.dump(2) + "\n";
}

}  // namespace gossipjam
