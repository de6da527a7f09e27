#include "doctest.h"

#include "fixtures.hpp"
#include "qbst/error.hpp"
#include "qbst/simplex.hpp"

using namespace qbst;
using qbst::test::q;

TEST_CASE("single variable") {
  LinearProgram lp;
  lp.variable_count = 1;
  lp.objective = {q(1)};
  lp.constraints.push_back({{{0, q(1)}}, q(1)});
  const auto sol = simplex_solve(lp);
  CHECK(sol.values[0] == q(1));
  CHECK(sol.objective == q(1));
}

TEST_CASE("cheaper variable saturates") {
  LinearProgram lp;
  lp.variable_count = 2;
  lp.objective = {q(1), q(2)};
  lp.constraints.push_back({{{0, q(1)}, {1, q(1)}}, q(1)});
  const auto sol = simplex_solve(lp);
  CHECK(sol.values[0] == q(1));
  CHECK(sol.values[1] == q(0));
  CHECK(sol.objective == q(1));
}

TEST_CASE("fractional optimum") {
  // min x + y  s.t.  2x + y >= 2, x + 3y >= 3  ->  x = 3/5, y = 4/5.
  LinearProgram lp;
  lp.variable_count = 2;
  lp.objective = {q(1), q(1)};
  lp.constraints.push_back({{{0, q(2)}, {1, q(1)}}, q(2)});
  lp.constraints.push_back({{{0, q(1)}, {1, q(3)}}, q(3)});
  const auto sol = simplex_solve(lp);
  CHECK(sol.values[0] == q(3, 5));
  CHECK(sol.values[1] == q(4, 5));
  CHECK(sol.objective == q(7, 5));
}

TEST_CASE("negative right-hand sides and redundant rows") {
  LinearProgram lp;
  lp.variable_count = 2;
  lp.objective = {q(1), q(1)};
  lp.constraints.push_back({{{0, q(-1)}}, q(-4)});  // x <= 4
  lp.constraints.push_back({{{0, q(1)}, {1, q(1)}}, q(2)});
  lp.constraints.push_back({{{0, q(2)}, {1, q(2)}}, q(4)});
  lp.constraints.push_back({{}, q(0)});
  const auto sol = simplex_solve(lp);
  CHECK(sol.objective == q(2));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram infeasible;
  infeasible.variable_count = 1;
  infeasible.objective = {q(1)};
  infeasible.constraints.push_back({{{0, q(-1)}}, q(1)});
  try {
    simplex_solve(infeasible);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }

  LinearProgram unbounded;
  unbounded.variable_count = 2;
  unbounded.objective = {q(-1), q(0)};
  unbounded.constraints.push_back({{{0, q(1)}, {1, q(-1)}}, q(0)});
  try {
    simplex_solve(unbounded);
    FAIL("expected Unbounded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unbounded);
  }
}

TEST_CASE("degenerate covering LP terminates") {
  // Set cover of {0..4} by all 2-subsets, unit costs: optimum 5/2.
  LinearProgram lp;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  }
  lp.variable_count = static_cast<int>(pairs.size());
  lp.objective.assign(pairs.size(), q(1));
  for (int e = 0; e < 5; ++e) {
    LinearConstraint c;
    c.rhs = q(1);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (pairs[p].first == e || pairs[p].second == e) c.terms.emplace_back(static_cast<int>(p), q(1));
    }
    lp.constraints.push_back(c);
  }
  const auto sol = simplex_solve(lp);
  CHECK(sol.objective == q(5, 2));
}
