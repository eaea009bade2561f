#include "gossipjam/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gossipjam/error.hpp"

namespace gossipjam {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

json cuts_json(const JammerSet& jam) {
  json arr = json::array();
  for (const auto& c : jam.cuts()) arr.push_back({c.lo, c.hi});
  return arr;
}

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

JammerSet cuts_from(const json& arr) {
  if (!arr.is_array()) throw ConfigError("cuts must be an array of [i, j] pairs");
  JammerSet jam;
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 2) throw ConfigError("each cut must be a pair [i, j]");
    jam.add(c[0].get<int>(), c[1].get<int>());
  }
  return jam;
}

}  // namespace

std::string network_to_json(const GossipNetwork& net, const JammerSet& cuts) {
  json links = json::array();
  for (const auto& [pair, r] : net.links())
    links.push_back({{"i", pair.lo}, {"j", pair.hi}, {"rate_ij", r.forward}, {"rate_ji", r.backward}});
  json doc = {{"n", net.size()},
              {"lambda_s", net.lambda_s()},
              {"source_rates", std::vector<double>(net.source_rates().begin(), net.source_rates().end())},
              {"links", links},
              {"cuts", cuts_json(cuts)}};
  return doc.dump(2) + "\n";
}

NetworkDocument network_from_json(std::string_view text) {
  const json doc = parse(text, "network");
  try {
    const int n = doc.at("n").get<int>();
    const double lambda_s = doc.value("lambda_s", 1.0);
    std::vector<double> sources;
    if (doc.contains("source_rates"))
      sources = doc.at("source_rates").get<std::vector<double>>();
    else
      sources.assign(static_cast<std::size_t>(std::max(n, 0)), n > 0 ? 1.0 / n : 0.0);
    std::map<NodePair, LinkRates> links;
    for (const auto& l : doc.value("links", json::array())) {
      const int i = l.at("i").get<int>();
      const int j = l.at("j").get<int>();
      const double rij = l.at("rate_ij").get<double>();
      const double rji = l.value("rate_ji", rij);
      const NodePair key = NodePair::of(i, j);
      if (links.contains(key))
        throw InvalidTopology("duplicate link (" + std::to_string(key.lo) + "," +
                              std::to_string(key.hi) + ")");
      links[key] = i < j ? LinkRates{rij, rji} : LinkRates{rji, rij};
    }
    JammerSet cuts = doc.contains("cuts") ? cuts_from(doc.at("cuts")) : JammerSet{};
    return {GossipNetwork(n, lambda_s, std::move(sources), std::move(links)), std::move(cuts)};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid network JSON: ") + e.what());
  }
}

std::string jammers_to_json(const JammerSet& jam) { return cuts_json(jam).dump() + "\n"; }

JammerSet jammers_from_json(std::string_view text) {
  const json doc = parse(text, "jammer");
  try {
    return cuts_from(doc.is_object() ? doc.at("cuts") : doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid jammer JSON: ") + e.what());
  }
}

std::string age_report_json(const AgeReport& report) {
  const json doc = {{"per_node", report.per_node}, {"total", report.total}, {"average", report.average}};
  return doc.dump(2) + "\n";
}

std::string age_report_csv(const AgeReport& report) {
  std::string out = "node_id,age\n";
  for (std::size_t i = 0; i < report.per_node.size(); ++i)
    out += std::to_string(i + 1) + "," + format_number(report.per_node[i]) + "\n";
  return out;
}

std::string sim_result_json(const SimResult& result) {
  const json doc = {{"per_node_time_avg", result.per_node_time_avg},
                    {"std_error", result.std_error},
                    {"average", result.average},
                    {"average_std_error", result.average_std_error},
                    {"events", result.events},
                    {"replications", result.replications}};
  return doc.dump(2) + "\n";
}

std::string sim_result_csv(const SimResult& result) {
  std::string out = "node_id,mean_age,std_error\n";
  for (std::size_t i = 0; i < result.per_node_time_avg.size(); ++i)
    out += std::to_string(i + 1) + "," + format_number(result.per_node_time_avg[i]) + "," +
           format_number(result.std_error[i]) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gossipjam
