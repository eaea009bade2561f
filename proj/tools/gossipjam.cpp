// gossipjam: command-line front end for the solvers, simulator, placements
// and experiment sweeps.
//
// Exit codes: 0 success, 1 invariant failure, 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gossipjam/analytic.hpp"
#include "gossipjam/error.hpp"
#include "gossipjam/experiments.hpp"
#include "gossipjam/io.hpp"
#include "gossipjam/placement.hpp"
#include "gossipjam/simulator.hpp"

namespace {

using namespace gossipjam;
using nlohmann::json;

constexpr int exit_invariant = 1;
constexpr int exit_input = 2;

struct Common {
  std::string out;
  std::string format = "csv";
  std::string config;
  double lambda_ratio = 1.0;
  std::uint64_t seed = 1;

  Rates rates() const { return {1.0, lambda_ratio}; }
};

struct NetworkArgs {
  std::string topology;
  int n = 0;
  int size = 0;
  int jammers = -1;
  std::string strategy;
  std::string cuts_file;
  std::string fc_denominator = "n";
};

struct SimArgs {
  double horizon = 1e5;
  std::optional<double> warmup;
  int reps = 10;
  int threads = 0;
  std::vector<int> set;
};

struct SweepArgs {
  double alpha = 0.3;
  double c = 1.0;
  std::vector<int> n;
  std::string strategy = "all";
  std::string rule = "nlogn";
  int n_max = 10000;
  int sim_max = -1;
  int points = 40;
  int reps = 10;
  std::optional<double> horizon;
  std::optional<double> warmup;
  int threads = 0;
  bool no_sim = false;
};

void emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + common.out);
  f << text;
}

void add_common(CLI::App* app, Common& c, bool with_format = true) {
  app->add_option("--out", c.out, "Write output to this path instead of stdout");
  if (with_format)
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--config", c.config, "JSON input (network file, or sweep settings)");
  app->add_option("--lambda-ratio", c.lambda_ratio, "lambda_s / lambda (default 1)");
  app->add_option("--seed", c.seed, "Random seed");
}

void add_network(CLI::App* app, NetworkArgs& a) {
  app->add_option("--topology", a.topology, "ring, fc, line, star or minifc")
      ->check(CLI::IsMember({"ring", "fc", "line", "star", "minifc"}));
  app->add_option("--n", a.n, "System size");
  app->add_option("--size", a.size, "Line length, star degree or mini-FC size (default: all nodes)");
  app->add_option("--jammers", a.jammers, "Number of jammers to place");
  app->add_option("--strategy", a.strategy, "Placement: adjacent, equidistant, random, greedy");
  app->add_option("--cuts", a.cuts_file, "JSON file with cut pairs [[i,j],...]");
  app->add_option("--fc-denominator", a.fc_denominator, "Fully connected link rate lambda/n or lambda/(n-1)")
      ->check(CLI::IsMember({"n", "n-1"}));
}

JammerSet place(const std::string& topology, int n, int count, const std::string& strategy,
                std::uint64_t seed) {
  if (strategy.empty()) throw ConfigError("--jammers needs --strategy");
  const Strategy s = parse_strategy(strategy);
  if (topology == "ring") {
    switch (s) {
      case Strategy::adjacent: return ring_adjacent(n, count);
      case Strategy::equidistant: return ring_equidistant(n, count);
      case Strategy::random: return ring_random(n, count, seed);
      case Strategy::greedy: break;
    }
    throw ConfigError("greedy placement applies to fully connected networks");
  }
  if (topology == "fc") {
    if (s != Strategy::greedy) throw ConfigError("fully connected networks support --strategy greedy");
    return fc_greedy(n, count).second;
  }
  throw ConfigError("jammer placement needs --topology ring or fc");
}

GossipNetwork load_network(const NetworkArgs& a, const Common& common) {
  const Rates rates = common.rates();
  GossipNetwork net(1, rates.lambda_s, {rates.lambda});
  JammerSet cuts;
  if (!common.config.empty()) {
    if (!a.topology.empty()) throw ConfigError("give either --config or --topology, not both");
    auto doc = network_from_json(read_file(common.config));
    net = std::move(doc.network);
    cuts = std::move(doc.cuts);
  } else {
    if (a.topology.empty()) throw ConfigError("need --config <network.json> or --topology");
    if (a.n < 1) throw ConfigError("--n must be >= 1");
    if (a.topology == "ring") net = build_ring(a.n, rates);
    if (a.topology == "fc")
      net = build_fully_connected(a.n, rates, a.fc_denominator == "n" ? FcDenominator::n : FcDenominator::n_minus_1);
    // without --size a line or mini-FC spans every node and a star has n-1 leaves
    const int size = a.size > 0 ? a.size : (a.topology == "star" ? a.n - 1 : a.n);
    if (a.topology == "line") net = build_line(size, a.n, rates);
    if (a.topology == "star") net = build_star(size, a.n, rates);
    if (a.topology == "minifc") net = build_mini_fc(size, a.n, rates);
    if (a.jammers >= 0) cuts = place(a.topology, a.n, a.jammers, a.strategy, common.seed);
  }
  if (!a.cuts_file.empty())
    for (const auto& p : jammers_from_json(read_file(a.cuts_file)).cuts()) cuts.add(p.lo, p.hi);
  std::vector<std::string> notes;
  net = apply_jammers(net, cuts, &notes);
  for (const auto& note : notes) std::cerr << "note: " << note << "\n";
  return net;
}

int run_solve(const Common& common, const NetworkArgs& a, const std::string& solver, int cap) {
  const GossipNetwork net = load_network(a, common);
  SolverOptions opts;
  opts.subset_cap = cap;
  const AgeReport report = solver == "subset" ? solve_subset_dp(net, opts) : solve(net, opts);
  emit(common, common.format == "json" ? age_report_json(report) : age_report_csv(report));
  return 0;
}

int run_simulate(const Common& common, const NetworkArgs& a, const SimArgs& s) {
  const GossipNetwork net = load_network(a, common);
  SimConfig cfg;
  cfg.horizon = s.horizon;
  cfg.warmup = s.warmup;
  cfg.seed = common.seed;
  cfg.replications = s.reps;
  cfg.threads = s.threads;
  if (!s.set.empty()) {
    const SetAgeEstimate est = simulate_set_age(net, s.set, cfg);
    if (common.format == "json")
      emit(common, json{{"set", s.set}, {"mean_age", est.mean}, {"std_error", est.std_error}}.dump(2) + "\n");
    else
      emit(common, "mean_age,std_error\n" + format_number(est.mean) + "," + format_number(est.std_error) + "\n");
    return 0;
  }
  const SimResult r = simulate(net, cfg);
  emit(common, common.format == "json" ? sim_result_json(r) : sim_result_csv(r));
  return 0;
}

int run_place(const Common& common, const NetworkArgs& a, int k_bar, int m_bar) {
  if (a.n < 1) throw ConfigError("--n must be >= 1");
  json doc;
  JammerSet jam;
  if (a.strategy == "clusters") {
    if (a.topology != "fc") throw ConfigError("cluster placement applies to --topology fc");
    jam = fc_clusters(a.n, k_bar, m_bar);
    doc["plan"] = {{"m_bar", m_bar}, {"k_bar", k_bar}};
  } else {
    if (a.jammers < 0) throw ConfigError("--jammers is required");
    if (a.topology == "fc" && a.strategy == "greedy") {
      const auto [plan, cuts] = fc_greedy(a.n, a.jammers);
      doc["plan"] = {{"k", plan.k}, {"c", plan.c}, {"steps", plan.steps}};
      jam = cuts;
    } else {
      jam = place(a.topology, a.n, a.jammers, a.strategy, common.seed);
    }
  }
  if (common.format == "json") {
    doc["n"] = a.n;
    doc["cuts"] = json::parse(jammers_to_json(jam));
    emit(common, doc.dump(2) + "\n");
  } else {
    std::string out = "i,j\n";
    for (const auto& p : jam.cuts()) out += std::to_string(p.lo) + "," + std::to_string(p.hi) + "\n";
    emit(common, out);
  }
  return 0;
}

// Sweep settings from --config, overridden by any flag given explicitly.
SweepSpec sweep_spec(const Common& common, const SweepArgs& a, const CLI::App* app, int default_sim_max) {
  SweepSpec spec;
  json cfg = json::object();
  if (!common.config.empty()) {
    try {
      cfg = json::parse(read_file(common.config));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed sweep config: ") + e.what());
    }
  }
  // not every sweep subcommand defines every flag
  auto given = [&](const char* flag) {
    const CLI::Option* opt = app->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  auto pick = [&](const char* flag, const char* key, auto cli_value) {
    using T = decltype(cli_value);
    if (given(flag) || !cfg.contains(key)) return cli_value;
    try {
      return cfg.at(key).template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  };
  spec.alpha = pick("--alpha", "alpha", a.alpha);
  spec.c = pick("--c", "c", a.c);
  spec.n_values = pick("--n", "n_values", a.n);
  spec.n_max = pick("--n-max", "n_max", a.n_max);
  spec.sim_max = pick("--sim-max", "sim_max", a.sim_max < 0 ? default_sim_max : a.sim_max);
  spec.points = pick("--points", "points", a.points);
  spec.replications = pick("--reps", "reps", a.reps);
  spec.seed = pick("--seed", "seed", common.seed);
  spec.threads = a.threads;
  spec.simulation = !pick("--no-sim", "no_sim", a.no_sim);
  if (given("--horizon") || cfg.contains("horizon"))
    spec.horizon = pick("--horizon", "horizon", a.horizon.value_or(0.0));
  if (given("--warmup") || cfg.contains("warmup"))
    spec.warmup = pick("--warmup", "warmup", a.warmup.value_or(0.0));
  const std::string strategy = pick("--strategy", "strategy", a.strategy);
  if (strategy != "all") spec.strategies = {parse_strategy(strategy)};
  const std::string rule = pick("--rule", "rule", a.rule);
  if (rule != "nlogn" && rule != "power") throw ConfigError("--rule must be nlogn or power");
  spec.fc_rule = rule == "power" ? FcRule::power : FcRule::n_log_n;
  spec.rates = common.rates();
  if (spec.replications < 1) throw ConfigError("--reps must be >= 1");
  return spec;
}

void add_sweep(CLI::App* app, SweepArgs& a) {
  app->add_option("--alpha", a.alpha, "Jammer exponent");
  app->add_option("--c", a.c, "Jammer scale constant");
  app->add_option("--n", a.n, "Explicit system sizes (default: grid rule)");
  app->add_option("--n-max", a.n_max, "Largest system size of the generated grid");
  app->add_option("--sim-max", a.sim_max, "Simulate only rows with n up to this");
  app->add_option("--points", a.points, "Approximate number of grid points");
  app->add_option("--reps", a.reps, "Simulation replications");
  app->add_option("--horizon", a.horizon, "Simulation horizon (default 65 n)");
  app->add_option("--warmup", a.warmup, "Simulation warmup (default 15 n)");
  app->add_option("--threads", a.threads, "Worker threads for replications (0: all cores)");
  app->add_flag("--no-sim", a.no_sim, "Skip simulation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Version age of gossip networks under link jamming"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  NetworkArgs net_args;
  SimArgs sim_args;
  SweepArgs sweep_args;
  std::string solver = "auto";
  int cap = 20;
  int k_bar = 0;
  int m_bar = 1;
  int enum_n = 6;
  std::string level = "fast";

  auto* solve_cmd = app.add_subcommand("solve", "Exact expected ages");
  add_common(solve_cmd, common);
  add_network(solve_cmd, net_args);
  solve_cmd->add_option("--solver", solver, "auto (specialized where possible) or subset")
      ->check(CLI::IsMember({"auto", "subset"}));
  solve_cmd->add_option("--cap", cap, "Largest component size for the subset recursion");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo time-average ages");
  add_common(sim_cmd, common);
  add_network(sim_cmd, net_args);
  sim_cmd->add_option("--horizon", sim_args.horizon, "Simulated time per replication");
  sim_cmd->add_option("--warmup", sim_args.warmup, "Discarded prefix (default 5% of horizon)");
  sim_cmd->add_option("--reps", sim_args.reps, "Replications");
  sim_cmd->add_option("--threads", sim_args.threads, "Worker threads (0: all cores)");
  sim_cmd->add_option("--set", sim_args.set, "Estimate the age of this node set instead")->delimiter(',');

  auto* place_cmd = app.add_subcommand("place", "Jammer placements");
  add_common(place_cmd, common);
  add_network(place_cmd, net_args);
  place_cmd->add_option("--k-bar", k_bar, "Cluster size for --strategy clusters");
  place_cmd->add_option("--m-bar", m_bar, "Cluster count for --strategy clusters");

  auto* ring_cmd = app.add_subcommand("sweep-ring", "Ring ages against jammer count");
  add_common(ring_cmd, common);
  add_sweep(ring_cmd, sweep_args);
  ring_cmd->add_option("--strategy", sweep_args.strategy, "adjacent, equidistant, random or all")
      ->check(CLI::IsMember({"adjacent", "equidistant", "random", "all"}));

  auto* fc_cmd = app.add_subcommand("sweep-fc", "Fully connected ages under greedy jamming");
  add_common(fc_cmd, common);
  add_sweep(fc_cmd, sweep_args);
  fc_cmd->add_option("--rule", sweep_args.rule, "nlogn (n ln n jammers) or power (c n^alpha)")
      ->check(CLI::IsMember({"nlogn", "power"}));
  fc_cmd->add_option("--strategy", sweep_args.strategy, "greedy")->check(CLI::IsMember({"greedy", "all"}));

  auto* enum_cmd = app.add_subcommand("enumerate", "Score every configuration of a small network");
  add_common(enum_cmd, common, false);
  enum_cmd->add_option("--n", enum_n, "System size (default 6, at most 8)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  add_common(verify_cmd, common, false);
  verify_cmd->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    if (*solve_cmd) return run_solve(common, net_args, solver, cap);
    if (*sim_cmd) return run_simulate(common, net_args, sim_args);
    if (*place_cmd) return run_place(common, net_args, k_bar, m_bar);
    if (*ring_cmd) {
      const RingSweep sweep = sweep_ring(sweep_spec(common, sweep_args, ring_cmd, 512));
      emit(common, common.format == "json" ? ring_sweep_json(sweep) : ring_sweep_csv(sweep));
      for (const auto& d : sweep.diagnostics) std::cerr << "note: " << d << "\n";
      for (const auto& row : sweep.rows)
        for (const auto& v : row.violations)
          std::cerr << "violation: n=" << row.n << " " << to_string(row.strategy) << ": " << v << "\n";
      return sweep.ok() ? 0 : exit_invariant;
    }
    if (*fc_cmd) {
      const FcSweep sweep = sweep_fc(sweep_spec(common, sweep_args, fc_cmd, 256));
      emit(common, common.format == "json" ? fc_sweep_json(sweep) : fc_sweep_csv(sweep));
      for (const auto& d : sweep.diagnostics) std::cerr << "note: " << d << "\n";
      return 0;
    }
    if (*enum_cmd) {
      std::vector<int> n_bars;
      for (int k = 1; k <= enum_n; ++k) n_bars.push_back(static_cast<int>(choose2(k)));
      const Enumeration e = enumerate_scored(enum_n, n_bars, common.rates());
      emit(common, enumeration_csv(e));
      for (const auto& g : e.groups)
        std::cerr << "n_bar=" << g.n_bar << " configs=" << g.count
                  << " max_average=" << format_number(g.max_average)
                  << " greedy_average=" << format_number(g.greedy_average)
                  << (g.greedy_is_max ? " greedy=max" : " GREEDY NOT MAXIMAL") << "\n";
      return e.ok() ? 0 : exit_invariant;
    }
    if (*verify_cmd) {
      const VerifyReport r =
          verify_properties(level == "full" ? VerifyLevel::full : VerifyLevel::fast, common.seed);
      emit(common, verify_report_json(r));
      for (const auto& p : r.properties)
        if (p.failures) std::cerr << "FAILED " << p.name << ": " << p.first_failure << "\n";
      return r.ok() ? 0 : exit_invariant;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invariant;
  }
  return 0;
}
