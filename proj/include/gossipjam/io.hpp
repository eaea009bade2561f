#pragma once

// JSON and CSV forms of networks, jammer sets, age reports and simulation
// results. Number formatting is fixed so output is byte-stable.

#include <string>
#include <string_view>

#include "gossipjam/analytic.hpp"
#include "gossipjam/network.hpp"
#include "gossipjam/simulator.hpp"

namespace gossipjam {

/// Shortest round-trip decimal form of a double; "nan"/"inf" spelled out.
std::string format_number(double x);

/// A network file: the unjammed network plus the cut list it carries.
struct NetworkDocument {
  GossipNetwork network;
  JammerSet cuts;
};

/// {n, lambda_s, source_rates[], links:[{i,j,rate_ij,rate_ji}], cuts:[[i,j]]}
std::string network_to_json(const GossipNetwork& net, const JammerSet& cuts = {});
NetworkDocument network_from_json(std::string_view text);

/// [[i,j], ...]
std::string jammers_to_json(const JammerSet& jam);
JammerSet jammers_from_json(std::string_view text);

std::string age_report_json(const AgeReport& report);
std::string age_report_csv(const AgeReport& report);

std::string sim_result_json(const SimResult& result);
std::string sim_result_csv(const SimResult& result);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace gossipjam
