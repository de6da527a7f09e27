#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "qbst/bcr.hpp"
#include "qbst/error.hpp"
#include "qbst/oracle.hpp"
#include "qbst/random_instance.hpp"

using namespace qbst;
using qbst::test::arc;
using qbst::test::q;

namespace {

// Minimum of x(delta+(U)) over all valid U, by enumeration.
Rational min_valid_cut(const Digraph& dg, const ArcVector& x) {
  const int n = dg.vertex_count();
  std::optional<Rational> best;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if ((mask >> dg.root()) & 1U) continue;
    bool has_terminal = false;
    for (VertexId t : dg.terminals()) has_terminal |= ((mask >> t) & 1U) != 0;
    if (!has_terminal) continue;
    Rational value = 0;
    for (ArcId a = 0; a < dg.arc_count(); ++a) {
      const Arc& arc = dg.arc(a);
      if (((mask >> arc.tail) & 1U) && !((mask >> arc.head) & 1U)) value += x.get(a);
    }
    if (!best || value < *best) best = value;
  }
  return best.value_or(Rational(1));
}

ArcVector all_arcs(const Digraph& dg, const Rational& value) {
  ArcVector x;
  for (ArcId a = 0; a < dg.arc_count(); ++a) x.set(a, value);
  return x;
}

}  // namespace

TEST_CASE("separate") {
  SUBCASE("zero vector on the path") {
    const Digraph dg = bidirect(test::path_instance());
    const auto violated = separate(dg, ArcVector{});
    REQUIRE(violated.size() == 1);
    CHECK(violated[0].value == 0);
    CHECK(std::find(violated[0].set.begin(), violated[0].set.end(), 2) != violated[0].set.end());
  }
  SUBCASE("arborescence toward the root is feasible") {
    const Digraph dg = bidirect(test::star_instance());
    ArcVector x;
    x.set(arc(dg, 1, 3), 1);
    x.set(arc(dg, 2, 3), 1);
    x.set(arc(dg, 3, 0), 1);
    CHECK(separate(dg, x).empty());
  }
  SUBCASE("star with half capacity into the root") {
    const Digraph dg = bidirect(test::star_instance());
    ArcVector x = all_arcs(dg, 1);
    x.set(arc(dg, 3, 0), q(1, 2));
    const auto violated = separate(dg, x);
    REQUIRE(violated.size() == 1);
    CHECK(violated[0].set == VertexSet{1, 2, 3});
    CHECK(violated[0].value == q(1, 2));
  }
}

TEST_CASE("solve_bcr examples") {
  SUBCASE("path") {
    const Digraph dg = bidirect(test::path_instance());
    const auto sol = solve_bcr(dg);
    CHECK(sol.objective_value == q(2));
    CHECK(sol.objective_value == solve_bcr_bruteforce(dg));
    CHECK(sol.x.get(arc(dg, 2, 1)) == 1);
    CHECK(sol.x.get(arc(dg, 1, 0)) == 1);
    CHECK(sol.x.size() == 2);
    CHECK(sol.is_minimal);
  }
  SUBCASE("star") {
    const Digraph dg = bidirect(test::star_instance());
    const auto sol = solve_bcr(dg);
    CHECK(sol.objective_value == q(3));
    CHECK(sol.objective_value == solve_bcr_bruteforce(dg));
    CHECK(sol.x.get(arc(dg, 1, 3)) == 1);
    CHECK(sol.x.get(arc(dg, 2, 3)) == 1);
    CHECK(sol.x.get(arc(dg, 3, 0)) == 1);
    CHECK(sol.x.size() == 3);
  }
  SUBCASE("single terminal") {
    const Digraph dg = bidirect(test::make_instance(2, {{0, 1, q(1)}}, {0}, 0));
    const auto sol = solve_bcr(dg);
    CHECK(sol.x.empty());
    CHECK(sol.objective_value == 0);
  }
  SUBCASE("isolated terminal is infeasible") {
    const Digraph dg = bidirect(test::make_instance(3, {{0, 1, q(1)}}, {0, 2}, 0));
    try {
      solve_bcr(dg);
      FAIL("expected Infeasible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Infeasible);
    }
  }
  SUBCASE("cut log lists every generated cut") {
    const Digraph dg = bidirect(test::star_instance());
    std::ostringstream log;
    BcrOptions options;
    options.cut_log = &log;
    const auto sol = solve_bcr(dg, options);
    std::size_t lines = 0;
    for (char c : log.str()) lines += c == '\n';
    CHECK(lines == sol.generated_cuts.size());
  }
}

TEST_CASE("make_minimal") {
  SUBCASE("minimal input is a fixed point") {
    const Digraph dg = bidirect(test::star_instance());
    ArcVector x;
    x.set(arc(dg, 1, 3), 1);
    x.set(arc(dg, 2, 3), 1);
    x.set(arc(dg, 3, 0), 1);
    CHECK(make_minimal(dg, x) == x);
  }
  SUBCASE("doubled path") {
    const Digraph dg = bidirect(test::path_instance());
    ArcVector x = all_arcs(dg, 2);
    const ArcVector m = make_minimal(dg, x);
    CHECK(m.get(arc(dg, 2, 1)) == 1);
    CHECK(m.get(arc(dg, 1, 0)) == 1);
    CHECK(m.get(arc(dg, 0, 1)) == 0);
    CHECK(m.get(arc(dg, 1, 2)) == 0);
  }
  SUBCASE("dead-end Steiner leaf") {
    // r=0, a=1 joined directly; Steiner 2 hangs off a.
    const Digraph dg = bidirect(test::make_instance(3, {{0, 1, q(1)}, {1, 2, q(1)}}, {0, 1}, 0));
    ArcVector x;
    x.set(arc(dg, 1, 0), 1);
    x.set(arc(dg, 1, 2), q(5, 3));
    const ArcVector m = make_minimal(dg, x);
    CHECK(m.get(arc(dg, 1, 2)) == 0);
    CHECK(m.get(arc(dg, 1, 0)) == 1);
  }
}

TEST_CASE("random instances: cutting planes match the explicit LP and stay minimal") {
  RandomInstanceParams params;
  params.max_vertices = 8;
  params.max_terminals = 5;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = random_quasi_bipartite(params, seed);
    const Digraph dg = bidirect(inst);
    const auto sol = solve_bcr(dg);
    CAPTURE(seed);
    CHECK(min_valid_cut(dg, sol.x) >= 1);
    CHECK(sol.objective_value == sol.x.cost(dg));
    CHECK(sol.objective_value == solve_bcr_bruteforce(dg));
    // Minimality: lowering any positive coordinate by a small step breaks feasibility.
    for (const auto& [a, value] : sol.x.entries()) {
      ArcVector lowered = sol.x;
      lowered.set(a, value - std::min(value, Rational(1, 1000)));
      CHECK(min_valid_cut(dg, lowered) < 1);
    }
  }
}

TEST_CASE("serial and parallel separation agree") {
  RandomInstanceParams params;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Digraph dg = bidirect(random_quasi_bipartite(params, seed));
    ArcVector x;
    for (ArcId a = 0; a < dg.arc_count(); a += 3) x.set(a, q(1, 3));
    const auto s = separate(dg, x, Execution::serial);
    const auto p = separate(dg, x, Execution::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].set == p[i].set);
      CHECK(s[i].value == p[i].value);
    }
    const auto a = solve_bcr(dg, {Execution::serial, nullptr});
    const auto b = solve_bcr(dg, {Execution::parallel, nullptr});
    CHECK(a.x == b.x);
    CHECK(a.generated_cuts == b.generated_cuts);
  }
}
