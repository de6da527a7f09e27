#include "doctest.h"

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "qbst/bcr.hpp"
#include "qbst/decompose.hpp"
#include "qbst/error.hpp"
#include "qbst/oracle.hpp"
#include "qbst/random_instance.hpp"

using namespace qbst;
using qbst::test::q;

TEST_CASE("enumerate_components") {
  SUBCASE("star: every subset of size >= 2 with every sink choice") {
    const auto ks = enumerate_components(bidirect(test::star_instance()));
    // sum over k >= 2 of C(3, k) * k
    CHECK(ks.size() == 3 * 2 + 1 * 3);
    for (const auto& k : ks) CHECK(k.centre == std::optional<VertexId>(3));
  }
  SUBCASE("single terminal edge") {
    const auto ks = enumerate_components(bidirect(test::make_instance(2, {{0, 1, q(1)}}, {0, 1}, 0)));
    CHECK(ks.size() == 2);
  }
  SUBCASE("Steiner leaf contributes nothing") {
    const auto ks = enumerate_components(
        bidirect(test::make_instance(3, {{0, 1, q(1)}, {1, 2, q(1)}}, {0, 1}, 0)));
    CHECK(ks.size() == 2);
  }
  SUBCASE("source cap") {
    const auto ks = enumerate_components(bidirect(test::star_instance()), 1);
    CHECK(ks.size() == 6);
  }
}

TEST_CASE("solve_dcr_bruteforce") {
  CHECK(solve_dcr_bruteforce(bidirect(test::path_instance())).value == q(2));
  const auto star = solve_dcr_bruteforce(bidirect(test::star_instance()));
  CHECK(star.value == q(3));
  CHECK(check_feasible_dcr(bidirect(test::star_instance()), star.y).feasible);
  CHECK(solve_dcr_bruteforce(bidirect(test::make_instance(2, {{0, 1, q(1)}}, {0}, 0))).value == 0);
}

TEST_CASE("check_feasible_dcr") {
  const Digraph dg = bidirect(test::star_instance());
  const auto empty = check_feasible_dcr(dg, ComponentVector{});
  CHECK_FALSE(empty.feasible);
  REQUIRE(empty.violated.has_value());
  CHECK(empty.violated->size() == 1);
  CHECK(empty.violated->front() != dg.root());

  ComponentVector only_a;
  only_a.add(make_component(dg, 3, 0, {1}), 1);
  const auto rep = check_feasible_dcr(dg, only_a);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.violated == std::optional<VertexSet>(VertexSet{2}));
}

TEST_CASE("borchers_du_rho") {
  CHECK(borchers_du_rho(2) == q(2));
  CHECK(borchers_du_rho(3) == q(5, 3));
  CHECK(borchers_du_rho(4) == q(3, 2));
  CHECK(borchers_du_rho(5) == q(13, 9));
  Rational previous = borchers_du_rho(2);
  for (int k = 3; k <= 200; ++k) {
    const Rational r = borchers_du_rho(k);
    CHECK(r < previous);
    CHECK(r > 1);
    previous = r;
  }
  CHECK(borchers_du_rho(1 << 20) - 1 < q(1, 19));
  CHECK_THROWS_AS(borchers_du_rho(1), Error);
}

TEST_CASE("submodularity checks") {
  const Digraph dg = bidirect(test::make_instance(
      6, {{0, 5, q(1)}, {1, 5, q(1)}, {2, 5, q(1)}, {3, 5, q(1)}, {4, 5, q(1)}}, {0, 1, 2, 3, 4}, 0));
  const std::vector<VertexId> terms = {0, 1, 2, 3, 4};
  for (const auto& k : enumerate_components(dg)) {
    const auto ex = check_submodularity_exhaustive(k, terms, dg.vertex_count());
    CHECK(ex.holds);
    CHECK(ex.checked == 32 * 32);
    const auto rnd = check_submodularity(k, terms, dg.vertex_count(), 200, 9);
    CHECK(rnd.holds);
    CHECK(rnd.checked == 200);
  }
}

TEST_CASE("tight sets uncross at BCR optima") {
  RandomInstanceParams params;
  params.max_vertices = 9;
  params.max_terminals = 5;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Digraph dg = bidirect(random_quasi_bipartite(params, seed));
    const auto bcr = solve_bcr(dg);
    PolyhedronPoint pt{bcr.x, {}};
    const PointScan scan(pt, dg);
    CHECK(scan.feasible());
    std::int64_t violations = 0;
    check_uncrossing(scan, violations);
    CHECK(violations == 0);
  }
}

TEST_CASE("DCR optimum is invariant under relabelling") {
  RandomInstanceParams params;
  params.max_vertices = 8;
  params.max_terminals = 5;
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = random_quasi_bipartite(params, seed);
    std::vector<VertexId> perm(static_cast<std::size_t>(inst.vertex_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RawInstance raw;
    raw.vertex_count = inst.vertex_count();
    for (const Edge& e : inst.edges()) {
      raw.edges.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.cost});
    }
    for (VertexId t : inst.terminals()) raw.terminals.push_back(perm[static_cast<std::size_t>(t)]);
    raw.root = perm[static_cast<std::size_t>(inst.root())];
    const Instance relabelled = validate_instance(raw);
    CHECK(solve_dcr_bruteforce(bidirect(inst)).value == solve_dcr_bruteforce(bidirect(relabelled)).value);
  }
}

TEST_CASE("monotonicity: restricting components never lowers the DCR value") {
  RandomInstanceParams params;
  params.max_vertices = 8;
  params.max_terminals = 5;
  for (std::uint64_t seed = 30; seed < 45; ++seed) {
    const Digraph dg = bidirect(random_quasi_bipartite(params, seed));
    const Rational full = solve_dcr_bruteforce(dg).value;
    const Rational capped = solve_dcr_bruteforce(dg, 2).value;
    CHECK(capped >= full);
  }
}

TEST_CASE("oracle size guards") {
  std::vector<Edge> edges;
  std::vector<VertexId> terminals;
  for (int t = 0; t < 13; ++t) {
    edges.push_back({t, 13, q(1)});
    terminals.push_back(t);
  }
  const Digraph dg = bidirect(test::make_instance(14, edges, terminals, 0));
  try {
    solve_dcr_bruteforce(dg);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
