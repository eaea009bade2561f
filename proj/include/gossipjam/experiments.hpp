#pragma once

// Experiment drivers behind the CLI: ring and fully connected sweeps, the
// n = 6 configuration census, and the property suites.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gossipjam/analytic.hpp"
#include "gossipjam/network.hpp"
#include "gossipjam/placement.hpp"

namespace gossipjam {

enum class Strategy { adjacent, equidistant, random, greedy };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

/// Jammer count rule for fully connected sweeps.
enum class FcRule { n_log_n, power };

struct SweepSpec {
  double alpha = 0.3;
  double c = 1.0;
  std::vector<int> n_values;  // empty: generated from the grid rule
  std::vector<Strategy> strategies{Strategy::adjacent, Strategy::equidistant, Strategy::random};
  FcRule fc_rule = FcRule::n_log_n;
  bool analytic_line = true;
  bool analytic_miniring = true;
  bool simulation = true;
  bool bounds = true;
  int n_max = 10000;
  int sim_max = 512;
  int points = 40;
  std::uint64_t seed = 1;
  int replications = 10;
  std::optional<double> horizon;  // default 65 n
  std::optional<double> warmup;   // default 15 n
  int threads = 0;
  Rates rates;
};

/// floor(c n^alpha), robust to pow rounding just below an integer.
std::int64_t jammer_count(double n, double alpha, double c);

/// Ring grid: for each retained jammer count t, the smallest n with
/// floor(c n^alpha) = t. Counts are thinned geometrically to `points` when
/// there are more; alpha = 0 falls back to a geometric n grid.
std::vector<int> ring_grid(double alpha, double c, int n_max, int points);

struct RingRow {
  int n = 0;
  int n_jammers = 0;
  Strategy strategy = Strategy::equidistant;
  std::optional<double> age_line;
  std::optional<double> age_miniring;
  std::optional<double> age_sim;
  std::optional<double> sim_stderr;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::uint64_t seed = 0;
  std::vector<std::string> violations;
};

struct RingSweep {
  std::vector<RingRow> rows;
  std::vector<std::string> diagnostics;
  bool ok() const;
};

RingSweep sweep_ring(const SweepSpec& spec);
std::string ring_sweep_csv(const RingSweep& sweep);
std::string ring_sweep_json(const RingSweep& sweep);

struct FcRow {
  int n = 0;
  std::int64_t n_jammers = 0;
  int k = 0;
  int leftover = 0;
  double age_analytic = 0.0;
  std::optional<double> age_sim;
  std::optional<double> sim_stderr;
  std::uint64_t seed = 0;
};

struct FcSweep {
  std::vector<FcRow> rows;
  std::vector<std::string> diagnostics;
};

/// Greedy placement on fully connected networks, keeping only n whose plan
/// has no leftover links.
FcSweep sweep_fc(const SweepSpec& spec);
std::string fc_sweep_csv(const FcSweep& sweep);
std::string fc_sweep_json(const FcSweep& sweep);

struct EnumRow {
  std::uint64_t config_id = 0;
  int n_bar = 0;
  std::vector<NodePair> links;
  double total = 0.0;
  double average = 0.0;
};

struct EnumGroup {
  int n_bar = 0;
  std::uint64_t count = 0;
  double max_average = 0.0;
  double greedy_average = 0.0;
  bool greedy_is_max = false;
};

struct Enumeration {
  std::vector<EnumRow> rows;
  std::vector<EnumGroup> groups;
  bool ok() const;
};

/// Scores every configuration with n_bar links (link rate lambda/n) for
/// each listed n_bar, and the greedy configuration of each group.
Enumeration enumerate_scored(int n, const std::vector<int>& n_bars, Rates rates = {});

/// n = 6 with n_bar = C(k,2), k = 1..6.
Enumeration enumerate_n6(Rates rates = {});
std::string enumeration_csv(const Enumeration& e);

struct AttachmentCase {
  int n = 0;
  int k = 0;
  std::uint64_t configs = 0;
  int maximizers = 0;
  bool maximizers_are_attachments = false;
  double best_total = 0.0;
};

/// Exhaustive search over all ways to add k links to a k-clique plus
/// isolated nodes, for k+1 <= n <= n_max and 1 <= k <= k_max. A maximizer
/// counts as an attachment when its graph is a (k+1)-clique plus isolated
/// nodes.
std::vector<AttachmentCase> attachment_search(int n_max, int k_max, Rates rates = {});

enum class VerifyLevel { fast, full };

struct PropertyResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool ok() const;
};

VerifyReport verify_properties(VerifyLevel level, std::uint64_t seed = 1);
std::string verify_report_json(const VerifyReport& report);

/// Published two-decimal R_d coefficients for d = 1..22.
const std::vector<double>& published_rd_table();

}  // namespace gossipjam
