// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <json.hpp>

#include "coreplace/errors.hpp"
#include "coreplace/flows.hpp"
#include "coreplace/scenario_io.hpp"
#include "fixtures.hpp"

using namespace coreplace;
using namespace coreplace::testing;

namespace {

const char* kScenario = R"({
  "infrastructure": {
    "servers": [{"id": 0, "cpu": 2, "mem": 2}, {"id": 1, "cpu": 1, "mem": 1}],
    "full_mesh": true, "mesh_capacity": 1000
  },
  "procedures": [{
    "id": 0, "name": "chain",
    "ms": [{"id": 0, "cpu": 1, "mem": 1, "load": 1, "remote_penalty_s": 0.0005},
           {"id": 1, "cpu": 1, "mem": 1, "load": 1, "remote_penalty_s": 0.0005},
           {"id": 2, "cpu": 1, "mem": 1, "load": 1, "remote_penalty_s": 0.0005}],
    "edges": [{"src": 0, "dst": 1, "base_time_s": 0.001},
              {"src": 1, "dst": 2, "base_time_s": 0.002}]
  }],
  "workload": [{"procedure": 0, "requests": 1}]
})";

}  // namespace

TEST(ScenarioIo, ParsesAndRoundTrips) {
  const Scenario sc = parse_scenario(kScenario);
  EXPECT_EQ(sc.infra.server_count(), 2u);
  EXPECT_DOUBLE_EQ(sc.infra.server(0).cpu_capacity, 2.0);
  EXPECT_DOUBLE_EQ(sc.infra.link_capacity(1, 0).value(), 1000.0);
  ASSERT_EQ(sc.procedures.size(), 1u);
  EXPECT_EQ(sc.procedures[0].name(), "chain");
  EXPECT_EQ(sc.procedures[0].edges().size(), 2u);
  EXPECT_EQ(sc.workload.at(0), 1u);

  const std::string text = scenario_to_json(sc);
  const Scenario again = parse_scenario(text);
  EXPECT_EQ(scenario_to_json(again), text);
}

TEST(ScenarioIo, ExplicitLinksAndAbsoluteUnits) {
  const char* text = R"({
    "infrastructure": {"servers": [{"id": 0, "cpu": 8, "mem": 4}, {"id": 1, "cpu": 4, "mem": 4},
                                   {"id": 2, "cpu": 4, "mem": 2}],
                       "links": [{"a": 0, "b": 1, "capacity": 10, "capacity_ba": 20}]},
    "procedures": [{"id": 0, "ms": [{"id": 0, "cpu": 2, "mem": 1, "load": 1, "remote_penalty_s": 0}],
                    "edges": []}],
    "workload": [{"procedure": 0, "requests": 3}],
    "units": "absolute"})";
  const Scenario sc = parse_scenario(text);
  EXPECT_DOUBLE_EQ(sc.infra.server(1).cpu_capacity, 0.5);
  EXPECT_DOUBLE_EQ(sc.infra.server(2).mem_capacity, 0.5);
  EXPECT_DOUBLE_EQ(sc.procedures[0].ms(0).cpu_footprint, 0.25);
  EXPECT_DOUBLE_EQ(sc.procedures[0].ms(0).mem_footprint, 0.25);
  EXPECT_TRUE(sc.infra.adjacent(0, 1));
  EXPECT_FALSE(sc.infra.adjacent(0, 2));
  EXPECT_DOUBLE_EQ(sc.infra.link_capacity(0, 1).value(), 10.0);
  EXPECT_DOUBLE_EQ(sc.infra.link_capacity(1, 0).value(), 20.0);
  EXPECT_DOUBLE_EQ(sc.infra.link_capacity(0, 2).value(), 0.0);
}

TEST(ScenarioIo, MalformedInputIsConfigError) {
  EXPECT_THROW(parse_scenario("{"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"procedures": []})"), ConfigError);
  std::string bad = kScenario;
  bad.replace(bad.find("\"base_time_s\": 0.001"), 20, "\"base_time_s\": -1.0 ");
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST(ScenarioIo, AssignmentReportRoundTrip) {
  const Scenario sc = parse_scenario(kScenario);
  const auto plan = replica_counts(sc.procedures, sc.workload);
  const Assignment a{{{0, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 2, 0}, 1}};
  const std::string report = assignment_report_json(sc, plan, a);
  const auto j = nlohmann::json::parse(report);
  EXPECT_NEAR(j.at("psi").get<double>(), 400.0, 1e-9);
  EXPECT_TRUE(j.at("constraints").at("capacity").get<bool>());
  EXPECT_EQ(j.at("link_flows").size(), 2u);
  EXPECT_EQ(j.at("per_server_utilization").size(), 2u);
  EXPECT_EQ(parse_assignment(report), a);
  EXPECT_EQ(parse_assignment(j.at("assignment").dump()), a);
}

TEST(ScenarioIo, DuplicateAssignmentEntryIsConfigError) {
  const char* text = R"([{"procedure":0,"ms":0,"replica":0,"server":0},
                         {"procedure":0,"ms":0,"replica":0,"server":1}])";
  EXPECT_THROW(parse_assignment(text), ConfigError);
}
