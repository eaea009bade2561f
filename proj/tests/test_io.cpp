#include <doctest.h>

#include <cmath>

#include "gossipjam/error.hpp"
#include "gossipjam/io.hpp"
#include "gossipjam/placement.hpp"

using namespace gossipjam;

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(33.0) == "33");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  const double x = 2.4662337662337664;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("network documents round trip") {
  const GossipNetwork g(3, 2.0, {0.1, 0.2, 0.3}, {{{1, 2}, {0.7, 0.9}}, {{2, 3}, {1.0, 0.0}}});
  const JammerSet cuts{{1, 3}};
  const NetworkDocument doc = network_from_json(network_to_json(g, cuts));
  CHECK(doc.network == g);
  CHECK(doc.cuts == cuts);
  CHECK(network_to_json(doc.network, doc.cuts) == network_to_json(g, cuts));

  const JammerSet jam = ring_equidistant(12, 4);
  CHECK(jammers_from_json(jammers_to_json(jam)) == jam);
}

TEST_CASE("malformed or inconsistent documents") {
  CHECK_THROWS_AS(network_from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(network_from_json(R"({"size": 2})"), ConfigError);
  CHECK_THROWS_AS(network_from_json(
                      R"({"n":2,"lambda_s":1,"source_rates":[1,1],)"
                      R"("links":[{"i":1,"j":2,"rate_ij":1,"rate_ji":1},{"i":2,"j":1,"rate_ij":1,"rate_ji":1}]})"),
                  InvalidTopology);
  CHECK_THROWS_AS(network_from_json(R"({"n":2,"lambda_s":1,"source_rates":[1],"links":[]})"), InputError);
  CHECK_THROWS_AS(jammers_from_json("[[1]]"), ConfigError);
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), ConfigError);
}

TEST_CASE("CSV headers and rows") {
  const AgeReport r = AgeReport::from({1.5, 2.0});
  const std::string csv = age_report_csv(r);
  CHECK(csv == "node_id,age\n1,1.5\n2,2\n");
  SimResult s;
  s.per_node_time_avg = {1.25};
  s.std_error = {std::nan("")};
  s.average = 1.25;
  s.replications = 1;
  CHECK(sim_result_csv(s) == "node_id,mean_age,std_error\n1,1.25,nan\n");
  CHECK(age_report_json(r).find("\"total\"") != std::string::npos);
}
