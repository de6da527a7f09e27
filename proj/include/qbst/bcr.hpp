#pragma once

#include <iosfwd>
#include <vector>

#include "qbst/model.hpp"
#include "qbst/parallel.hpp"

namespace qbst {

struct BcrSolution {
  ArcVector x;
  Rational objective_value;
  /// Valid sets whose cut constraints were in the final restricted LP.
  std::vector<VertexSet> generated_cuts;
  bool is_minimal = false;
  int lp_rounds = 0;
};

struct ViolatedSet {
  VertexSet set;
  Rational value;  // x(delta+(set)) < 1
};

/// For every terminal w != root, one minimum w-root cut in the
/// x-capacitated digraph; returns the (deduplicated) source sides of value
/// below 1. An empty result certifies BCR feasibility.
std::vector<ViolatedSet> separate(const Digraph& dg, const ArcVector& x,
                                  Execution execution = Execution::parallel);

/// Greedy pointwise reduction to a minimal feasible solution, arcs in
/// ascending id order.
ArcVector make_minimal(const Digraph& dg, ArcVector x, Execution execution = Execution::parallel);

struct BcrOptions {
  Execution execution = Execution::parallel;
  std::ostream* cut_log = nullptr;  // "U: 0 3 5" per generated cut
};

/// Cutting-plane solve of the bidirected cut relaxation, followed by
/// make_minimal. Throws Error(Infeasible) when a terminal cannot reach the
/// root.
BcrSolution solve_bcr(const Digraph& dg, const BcrOptions& options = {});

}  // namespace qbst
