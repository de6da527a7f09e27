#pragma once

#include <utility>
#include <vector>

#include "qbst/rational.hpp"

namespace qbst {

/// sum_j coefficient_j * x_j >= rhs
struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;
  Rational rhs;
};

/// min objective . x  subject to every constraint and x >= 0.
struct LinearProgram {
  int variable_count = 0;
  std::vector<Rational> objective;  // size variable_count
  std::vector<LinearConstraint> constraints;
};

struct LpSolution {
  std::vector<Rational> values;
  Rational objective;
  int pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule
/// (lowest eligible index enters, lowest basic index breaks ratio ties).
/// Returns an optimal basic solution. Throws Error(Infeasible) or
/// Error(Unbounded).
LpSolution simplex_solve(const LinearProgram& lp);

}  // namespace qbst
