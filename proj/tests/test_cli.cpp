#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fixtures.hpp"
#include "qbst/error.hpp"
#include "qbst/pipeline.hpp"
#include "qbst/random_instance.hpp"
#include "qbst/stp.hpp"

using namespace qbst;
using qbst::test::q;

namespace {

std::string fixture(const std::string& name) { return std::string(QBST_FIXTURE_DIR) + "/" + name; }

ErrorCode parse_error_code(const std::string& text) {
  try {
    parse_stp(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ErrorCode::InvalidArgument;
}

nlohmann::json run_json(RunConfig config) {
  config.json = true;
  const RunOutcome out = run(config);
  auto doc = nlohmann::json::parse(out.report);
  CHECK(doc["exit_code"].get<int>() == out.exit_code);
  return doc;
}

}  // namespace

TEST_CASE("parse_stp") {
  SUBCASE("path") {
    const Instance inst = parse_stp(R"(SECTION Graph
Nodes 3
Edges 2
E 1 2 1
E 2 3 1
END
SECTION Terminals
Terminals 2
T 1
T 3
END
EOF
)");
    CHECK(inst.vertex_count() == 3);
    CHECK(inst.edges().size() == 2);
    CHECK(inst.root() == 0);
    CHECK(inst.terminals() == VertexSet{0, 2});
  }
  SUBCASE("rational weights and an explicit root") {
    const Instance inst = parse_stp(std::string(R"(SECTION Graph
Nodes 2
Edges 1
E 1 2 3/2
END
SECTION Terminals
T 1
T 2
Root 2
END
)"));
    CHECK(inst.edges()[0].cost == q(3, 2));
    CHECK(inst.root() == 1);
  }
  SUBCASE("star fixture text") {
    const Instance inst = parse_stp(test::kStarStp);
    CHECK(inst.terminals().size() == 3);
    CHECK(inst.steiner_vertices() == VertexSet{3});
  }
  SUBCASE("errors") {
    CHECK(parse_error_code("SECTION Graph\nNodes 2\nE 1 2 1\nEND\nSECTION Terminals\nT 3\nEND\n") ==
          ErrorCode::ParseError);
    CHECK(parse_error_code("SECTION Graph\nNodes 2\nE 1 5 1\nEND\n") == ErrorCode::ParseError);
    CHECK(parse_error_code("SECTION Graph\nNodes 2\nE 1 2 x\nEND\n") == ErrorCode::ParseError);
    CHECK(parse_error_code("SECTION Graph\nNodes 2\nEdges 3\nE 1 2 1\nEND\nSECTION Terminals\nT 1\nEND\n") ==
          ErrorCode::ParseError);
    CHECK(parse_error_code("SECTION Graph\nNodes 3\nE 2 3 1\nEND\nSECTION Terminals\nT 1\nEND\n") ==
          ErrorCode::SteinerSteinerEdge);
  }
  SUBCASE("line numbers are reported") {
    try {
      parse_stp("SECTION Graph\nNodes 2\nE 1 9 1\nEND\n");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

TEST_CASE("serialize_stp round-trips") {
  RandomInstanceParams params;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = random_quasi_bipartite(params, seed);
    const Instance back = parse_stp(serialize_stp(inst));
    CHECK(back.vertex_count() == inst.vertex_count());
    CHECK(back.terminals() == inst.terminals());
    CHECK(back.root() == inst.root());
    REQUIRE(back.edges().size() == inst.edges().size());
    for (std::size_t i = 0; i < inst.edges().size(); ++i) {
      CHECK(back.edges()[i].u == inst.edges()[i].u);
      CHECK(back.edges()[i].v == inst.edges()[i].v);
      CHECK(back.edges()[i].cost == inst.edges()[i].cost);
    }
  }
}

TEST_CASE("run: full pipeline on the star") {
  RunConfig config;
  config.input_path = fixture("star.stp");
  config.trials = 20;
  const auto doc = run_json(config);
  CHECK(doc["exit_code"] == 0);
  CHECK(doc["bcr"]["value"] == "3/1");
  CHECK(doc["decomposition"]["component_count"] == 1);
  CHECK(doc["decomposition"]["components"][0]["weight"] == "1/1");
  CHECK(doc["oracle"]["verdict"] == "PASS");
  CHECK(doc["sampling"]["rounds"] == 2);
  CHECK(doc["sampling"]["mean_cost"] == "3/1");
}

TEST_CASE("run: text report mirrors the JSON keys") {
  RunConfig config;
  config.input_path = fixture("star.stp");
  config.command = Command::solve_bcr;
  const RunOutcome out = run(config);
  CHECK(out.exit_code == 0);
  CHECK(out.report.find("bcr.value: 3/1\n") != std::string::npos);
  CHECK(out.report.find("bcr.arcs[0]: tail=") != std::string::npos);
}

TEST_CASE("run: deterministic reports") {
  RunConfig config;
  config.input_path = fixture("rational.stp");
  config.trace = true;
  config.trials = 30;
  const std::string a = run(config).report;
  config.execution = Execution::serial;
  const std::string b = run(config).report;
  CHECK(a == b);
}

TEST_CASE("run: errors and exit codes") {
  SUBCASE("oracle-check refuses 13 terminals") {
    RunConfig config;
    config.input_path = fixture("wide_star.stp");
    config.command = Command::oracle_check;
    config.oracle_limit = 12;
    const auto doc = run_json(config);
    CHECK(doc["exit_code"] == 1);
    CHECK(doc["error"]["code"] == "TooLarge");
  }
  SUBCASE("isolated terminal") {
    RunConfig config;
    config.input_path = fixture("isolated.stp");
    config.command = Command::decompose;
    const auto doc = run_json(config);
    CHECK(doc["exit_code"] == 1);
    CHECK(doc["error"]["code"] == "Infeasible");
  }
  SUBCASE("missing file") {
    RunConfig config;
    config.input_path = fixture("does-not-exist.stp");
    CHECK(run(config).exit_code == 1);
  }
  SUBCASE("malformed text") {
    RunConfig config;
    config.input_text = "SECTION Graph\nNodes 2\nE 1 2 1/0\nEND\n";
    const auto doc = run_json(config);
    CHECK(doc["error"]["code"] == "ParseError");
  }
  SUBCASE("oracle skipped above the limit in the full pipeline") {
    RunConfig config;
    config.input_path = fixture("wide_star.stp");
    config.oracle_limit = 4;
    config.trials = 5;
    const auto doc = run_json(config);
    CHECK(doc["exit_code"] == 0);
    CHECK(doc["oracle"]["verdict"] == "SKIPPED");
  }
  SUBCASE("bad config") {
    RunConfig config;
    config.input_path = fixture("star.stp");
    config.trials = 0;
    CHECK(run(config).exit_code == 1);
  }
}

TEST_CASE("command names") {
  for (Command c : {Command::solve_bcr, Command::decompose, Command::sample, Command::oracle_check,
                    Command::full_pipeline}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_command("nope"), Error);
}
