#include <sstream>

#include "doctest.h"
#include "pigc/error.hpp"
#include "pigc/serialize.hpp"

using namespace pigc;

namespace {

CausalGraph sample_graph() {
  CausalGraph g;
  g.node_names = {"IK", "DD", "IL"};
  g.delta.resize(3, 3);
  g.delta << 0, 0.25, 0, 0.01, 0, 0, 0, 0.1 / 3.0, 0;
  g.raw_log_ratios.resize(3, 3);
  g.raw_log_ratios << 0, 0.25, -0.02, 0.01, 0, -1e-3, -0.5, 0.1 / 3.0, 0;
  return g;
}

}  // namespace

TEST_CASE("graph JSON round-trips exactly") {
  const auto g = sample_graph();
  const auto j = graph_to_json(g);
  CHECK(j.at("delta")[0][1].get<double>() == 0.25);
  const auto back = graph_from_json(nlohmann::json::parse(j.dump(2)));
  CHECK(back.node_names == g.node_names);
  CHECK(back.delta == g.delta);
  CHECK(back.raw_log_ratios == g.raw_log_ratios);
}

TEST_CASE("graph JSON shape errors") {
  auto j = graph_to_json(sample_graph());
  j["delta"].erase(0);
  CHECK_THROWS_AS(graph_from_json(j), Error);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::object()), Error);
}

TEST_CASE("edge CSV is sorted by delta, ties in row-major order") {
  std::ostringstream out;
  write_edge_csv(out, sample_graph());
  const std::string expected =
      "cause,effect,delta\n"
      "IK,DD,0.25\n"
      "IL,DD,0.03333333333333333\n"
      "DD,IK,0.01\n"
      "IK,IL,0\n"
      "DD,IL,0\n"
      "IL,IK,0\n";
  CHECK(out.str() == expected);
}

TEST_CASE("sidecar carries ground truth and generator metadata") {
  const auto d = generate(GeneratorId::kFanin3, 60, 5);
  const auto j = dataset_sidecar(d);
  CHECK(j.at("generator_id") == "fanin3");
  CHECK(j.at("seed") == 5);
  CHECK(j.at("T") == 60);
  CHECK(ground_truth_from_sidecar(j) == d.ground_truth);
  CHECK(j.at("params").at("burn_in") == 1000);
}

TEST_CASE("records CSV round-trips, failures included") {
  std::vector<BenchmarkRecord> records(2);
  records[0] = {"fanout3", "ours", 100, 7, 0.8125, ""};
  records[1] = {"linear5", "linear", 50, 8, std::nullopt, "rank error: x, y"};
  std::stringstream s;
  write_records_csv(s, records);
  const auto back = read_records_csv(s);
  REQUIRE(back.size() == 2);
  CHECK(back[0].auc == 0.8125);
  CHECK(back[0].seed == 7);
  CHECK(!back[1].auc);
  CHECK(back[1].failure == "rank error: x; y");
}

TEST_CASE("summaries JSON") {
  CellSummary s;
  s.generator = "g";
  s.method = "m";
  s.samples = 50;
  s.count = 4;
  s.median = 0.5;
  const auto j = summaries_to_json({s});
  CHECK(j.at("summaries")[0].at("median") == 0.5);
  CellSummary omitted = s;
  omitted.omitted = true;
  CHECK(!summaries_to_json({omitted}).at("summaries")[0].contains("median"));
}
