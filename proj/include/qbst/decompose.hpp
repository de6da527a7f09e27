#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qbst/flow.hpp"
#include "qbst/model.hpp"
#include "qbst/parallel.hpp"

namespace qbst {

/// Mixed point (x, y): arc weights plus directed-full-component weights.
/// The decomposer keeps it a minimal member of the polyhedron
///   x(delta+(U)) + y(Delta+(U)) >= 1  for every valid U.
struct PolyhedronPoint {
  ArcVector x;
  ComponentVector y;
};

/// Eligible sources and the two tight-set families for one (centre, sink)
/// pair. All sets are sorted terminal lists; families are pairwise disjoint.
struct FeasibilityFamilies {
  VertexId centre = 0;
  VertexId sink = 0;
  VertexSet eligible;                 // C
  std::vector<VertexSet> maximal_x;   // X*, inclusion-wise maximal sets
  std::vector<VertexSet> minimal_y;   // Y*, inclusion-wise minimal sets
};

enum class StepKind { saturating, set_binding };

struct StepResult {
  DirectedFullComponent component;
  Rational lambda;
  /// The valid set made tight by the step; empty when an arc hit zero.
  std::optional<VertexSet> binding_set;
  StepKind kind = StepKind::saturating;
  int rounds = 0;  // violated-set refinements performed
};

/// Sum of y_K times K's arc indicator.
ArcVector phi(const ComponentVector& y, const Digraph& dg);

/// Auxiliary network for the point: nodes 0..n-1 are vertices, node n is
/// an unattached super-source, then one node per support component. The
/// sink is the root.
struct SupportNetwork {
  FlowNetwork network;
  int super_source = 0;
  std::vector<int> component_nodes;  // parallel to pt.y.entries() order
};

SupportNetwork build_support_digraph(const PolyhedronPoint& pt, const Digraph& dg);

/// Value of the polyhedron constraint for U: x(delta+(U)) + y(Delta+(U)).
Rational constraint_value(const PolyhedronPoint& pt, const Digraph& dg, std::span<const VertexId> set);

/// C, X*, Y* for the given centre and sink via O(n) minimum cuts.
FeasibilityFamilies compute_families(const PolyhedronPoint& pt, const Digraph& dg, VertexId centre,
                                     VertexId sink, Execution execution = Execution::parallel);

/// Component whose sources are matched one per Y*-set through the X*-sets.
/// Throws Error(NoFeasibleComponent) when no such component exists.
DirectedFullComponent find_feasible_component(const FeasibilityFamilies& families,
                                              const PolyhedronPoint& pt, const Digraph& dg);

/// Largest lambda keeping (x - lambda chi_K, y + lambda e_K) in the polyhedron.
StepResult max_step_lambda(const PolyhedronPoint& pt, const DirectedFullComponent& k,
                           const Digraph& dg, Execution execution = Execution::parallel);

/// Everything an observer needs to audit one extraction step.
struct StepRecord {
  std::size_t index = 0;
  const PolyhedronPoint* before = nullptr;
  const PolyhedronPoint* after = nullptr;
  const FeasibilityFamilies* families = nullptr;
  const StepResult* step = nullptr;
};

struct DecomposeOptions {
  Execution execution = Execution::parallel;
  std::function<void(const StepRecord&)> observer;
  /// Newline-delimited JSON, one record per extracted component.
  std::ostream* trace = nullptr;
};

struct DecomposeResult {
  ComponentVector y;
  std::size_t iterations = 0;           // centred extraction steps
  std::size_t saturating_steps = 0;
  std::size_t terminal_components = 0;  // residual terminal-terminal arcs
};

/// Converts a minimal feasible BCR point into a DCR point y with
/// phi(y) = x. Throws Error(NoFeasibleComponent) or Error(InvariantBreach)
/// if the input violates the precondition.
DecomposeResult decompose(const ArcVector& x, const Digraph& dg, const DecomposeOptions& options = {});

}  // namespace qbst
