#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "qbst/bcr.hpp"
#include "qbst/error.hpp"
#include "qbst/model.hpp"
#include "qbst/oracle.hpp"
#include "qbst/random_instance.hpp"

using namespace qbst;
using qbst::test::q;

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(q(3)) == "3/1");
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(to_string(q(-1, 3)) == "-1/3");
  CHECK(parse_rational("3/2") == q(3, 2));
  CHECK(parse_rational("-4/6") == q(-2, 3));
  CHECK(parse_rational("7") == q(7));
  CHECK(parse_rational("+7") == q(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK(to_decimal(q(2, 3), 6) == "0.666667");
  CHECK(to_decimal(q(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(q(5), 0) == "5");
}

TEST_CASE("validate_instance") {
  SUBCASE("triangle on terminals is already canonical") {
    const Instance inst = test::make_instance(3, {{0, 1, q(1)}, {1, 2, q(1)}, {0, 2, q(1)}}, {0, 1, 2}, 0);
    REQUIRE(inst.edges().size() == 3);
    CHECK(inst.edges()[0].u == 0);
    CHECK(inst.edges()[0].v == 1);
    CHECK(inst.edges()[2].u == 1);
    CHECK(inst.edges()[2].v == 2);
    CHECK(inst.root() == 0);
  }
  SUBCASE("Steiner-Steiner edge rejected") {
    try {
      test::make_instance(3, {{1, 2, q(1)}, {0, 1, q(1)}}, {0}, 0);
      FAIL("expected SteinerSteinerEdge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SteinerSteinerEdge);
    }
  }
  SUBCASE("parallel edges collapse to the cheapest") {
    const Instance inst = test::make_instance(2, {{0, 1, q(5)}, {1, 0, q(3)}}, {0, 1}, 0);
    REQUIRE(inst.edges().size() == 1);
    CHECK(inst.edges()[0].cost == q(3));
  }
  SUBCASE("error codes") {
    auto code_of = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidArgument;
    };
    CHECK(code_of([] { test::make_instance(2, {{0, 1, q(-1)}}, {0, 1}, 0); }) == ErrorCode::NegativeCost);
    CHECK(code_of([] { test::make_instance(2, {{0, 1, q(1)}}, {0}, 1); }) == ErrorCode::RootNotTerminal);
    CHECK(code_of([] { test::make_instance(2, {{0, 1, q(1)}}, {}, 0); }) == ErrorCode::EmptyTerminalSet);
    CHECK(code_of([] { test::make_instance(2, {{1, 1, q(1)}}, {0, 1}, 0); }) == ErrorCode::SelfLoop);
    CHECK(code_of([] { test::make_instance(2, {{0, 5, q(1)}}, {0, 1}, 0); }) == ErrorCode::InvalidVertex);
  }
  SUBCASE("root defaults to lowest terminal") {
    RawInstance raw;
    raw.vertex_count = 3;
    raw.terminals = {2, 1};
    raw.edges = {{1, 2, q(1)}};
    CHECK(validate_instance(raw).root() == 1);
  }
}

TEST_CASE("bidirect") {
  SUBCASE("one edge becomes two arcs of equal cost") {
    const Instance inst = test::make_instance(2, {{0, 1, q(7, 2)}}, {0, 1}, 0);
    const Digraph dg = bidirect(inst);
    REQUIRE(dg.arc_count() == 2);
    CHECK(dg.arc(0).tail == 0);
    CHECK(dg.arc(0).head == 1);
    CHECK(dg.arc(1).tail == 1);
    CHECK(dg.arc(1).head == 0);
    CHECK(dg.arc(0).cost == q(7, 2));
    CHECK(dg.arc(1).cost == q(7, 2));
  }
  SUBCASE("empty edge set") {
    const Digraph dg = bidirect(test::make_instance(1, {}, {0}, 0));
    CHECK(dg.arc_count() == 0);
  }
  SUBCASE("arc set is symmetric and undirecting recovers the edges") {
    const Instance inst = test::star_instance();
    const Digraph dg = bidirect(inst);
    CHECK(dg.arc_count() == 2 * static_cast<int>(inst.edges().size()));
    for (const Arc& a : dg.arcs()) {
      const auto back = dg.find_arc(a.head, a.tail);
      REQUIRE(back);
      CHECK(dg.arc(*back).cost == a.cost);
      const Edge& e = inst.edges()[static_cast<std::size_t>(a.edge)];
      CHECK(std::min(a.tail, a.head) == e.u);
      CHECK(std::max(a.tail, a.head) == e.v);
      CHECK(a.cost == e.cost);
    }
  }
}

TEST_CASE("cut_arcs") {
  const Digraph dg = bidirect(test::path_instance());  // r=0, v=1, a=2
  CHECK(cut_arcs(dg, VertexSet{0, 1, 2}).empty());
  const auto single = cut_arcs(dg, VertexSet{2});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == test::arc(dg, 2, 1));
  const auto pair = cut_arcs(dg, VertexSet{1, 2});
  REQUIRE(pair.size() == 1);
  CHECK(pair[0] == test::arc(dg, 1, 0));
}

TEST_CASE("component_crosses and make_component") {
  const Digraph dg = bidirect(test::star_instance());  // r=0, a=1, b=2, v=3
  const auto k = make_component(dg, 3, 0, {2, 1});
  CHECK(k.sources == VertexSet{1, 2});
  CHECK(k.arcs.size() == 3);
  CHECK(k.cost == q(3));
  CHECK(component_crosses(k, membership(4, VertexSet{1})));
  CHECK_FALSE(component_crosses(k, membership(4, VertexSet{1, 0})));
  CHECK_FALSE(component_crosses(k, membership(4, VertexSet{})));

  CHECK_THROWS_AS(make_component(dg, std::nullopt, 3, {1}), Error);  // Steiner sink
  CHECK_THROWS_AS(make_component(dg, 3, 0, {0}), Error);
  CHECK_THROWS_AS(make_component(dg, std::nullopt, 0, {1, 2}), Error);
  CHECK_THROWS_AS(make_component(dg, std::nullopt, 0, {1}), Error);  // no arc 1->0
}

TEST_CASE("arc and component vectors drop zeros") {
  ArcVector x;
  x.set(3, q(1, 2));
  x.add(3, q(-1, 2));
  CHECK(x.empty());
  CHECK_THROWS_AS(x.set(1, q(-1)), Error);

  const Digraph dg = bidirect(test::star_instance());
  ComponentVector y;
  const auto k = make_component(dg, 3, 0, {1});
  y.add(k, q(1, 3));
  y.add(make_component(dg, 3, 0, {1}), q(1, 4));
  CHECK(y.size() == 1);
  CHECK(y.get(k) == q(7, 12));
  y.add(k, q(-7, 12));
  CHECK(y.empty());
}

TEST_CASE("Delta+_K is submodular (random components, random U and W)") {
  std::mt19937_64 rng(7);
  const Digraph dg = bidirect(test::make_instance(
      6, {{0, 5, q(1)}, {1, 5, q(1)}, {2, 5, q(1)}, {3, 5, q(1)}, {4, 5, q(1)}}, {0, 1, 2, 3, 4}, 0));
  const std::vector<VertexId> terms = {0, 1, 2, 3, 4};
  for (const auto& k : enumerate_components(dg)) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto u = rng() & 31U;
      const auto w = rng() & 31U;
      auto mask = [&](std::uint64_t bits) {
        std::vector<char> in(6, 0);
        for (int i = 0; i < 5; ++i) in[static_cast<std::size_t>(i)] = static_cast<char>((bits >> i) & 1U);
        return in;
      };
      const int lhs = component_crosses(k, mask(u)) + component_crosses(k, mask(w));
      const int rhs = component_crosses(k, mask(u & w)) + component_crosses(k, mask(u | w));
      CHECK(lhs >= rhs);
    }
  }
}

TEST_CASE("shortest_path_closure") {
  SUBCASE("star gains terminal edges through the centre") {
    const Instance closed = shortest_path_closure(test::star_instance());
    CHECK(closed.edges().size() == 6);
    for (const Edge& e : closed.edges()) {
      const bool through_centre = e.u == 3 || e.v == 3;
      CHECK(e.cost == (through_centre ? q(1) : q(2)));
    }
  }
  SUBCASE("optimum and edge costs on random instances") {
    RandomInstanceParams params;
    params.max_vertices = 9;
    params.max_terminals = 5;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CAPTURE(seed);
      const Instance inst = random_quasi_bipartite(params, seed);
      const Instance closed = shortest_path_closure(inst);
      CHECK(closed.terminals() == inst.terminals());
      CHECK(closed.root() == inst.root());
      CHECK(closed.edges().size() >= inst.edges().size());
      for (const Edge& e : inst.edges()) {
        for (const Edge& c : closed.edges()) {
          if ((c.u == e.u && c.v == e.v) || (c.u == e.v && c.v == e.u)) CHECK(c.cost <= e.cost);
        }
      }
      CHECK(solve_bcr(bidirect(closed)).objective_value == solve_bcr(bidirect(inst)).objective_value);
      CHECK(solve_dcr_bruteforce(bidirect(closed)).value == solve_dcr_bruteforce(bidirect(inst)).value);
    }
  }
}
