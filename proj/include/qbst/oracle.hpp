#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbst/decompose.hpp"
#include "qbst/model.hpp"

namespace qbst {

// Brute-force ground truth at desk scale. Everything here is exponential in
// the number of terminals or vertices and guarded by explicit size limits.

inline constexpr int kDcrTerminalLimit = 12;
inline constexpr int kFeasibilityTerminalLimit = 20;
inline constexpr int kTightSetVertexLimit = 20;

/// All directed full components: both orientations of every
/// terminal-terminal edge, and every (subset, sink) star around each
/// Steiner vertex with at most max_sources sources (negative = no limit).
std::vector<DirectedFullComponent> enumerate_components(const Digraph& dg, int max_sources = -1);

struct DcrSolution {
  ComponentVector y;
  Rational value;
};

/// Explicit LP over every enumerated component with one crossing constraint
/// per non-empty U of the non-root terminals. Throws TooLarge / Infeasible.
DcrSolution solve_dcr_bruteforce(const Digraph& dg, int max_sources = -1);

/// Explicit BCR LP with a constraint for every valid vertex set. Only for
/// very small graphs (vertex_count <= 10).
Rational solve_bcr_bruteforce(const Digraph& dg);

struct FeasibilityReport {
  bool feasible = true;
  std::optional<VertexSet> violated;  // first violated terminal set
};

FeasibilityReport check_feasible_dcr(const Digraph& dg, const ComponentVector& y);

/// Borchers-Du ratio for components with at most k terminals.
Rational borchers_du_rho(int k);

struct SubmodularityReport {
  bool holds = true;
  std::int64_t checked = 0;
  std::optional<std::pair<VertexSet, VertexSet>> witness;
};

/// Random U, W over `terminals`, asserting
/// D(U) + D(W) >= D(U & W) + D(U | W) for D = Delta+_K.
SubmodularityReport check_submodularity(const DirectedFullComponent& k,
                                        const std::vector<VertexId>& terminals, int vertex_count,
                                        std::int64_t trials, std::uint64_t seed);

/// Same inequality over every pair of subsets of `terminals` (|terminals| <= 10).
SubmodularityReport check_submodularity_exhaustive(const DirectedFullComponent& k,
                                                   const std::vector<VertexId>& terminals,
                                                   int vertex_count);

/// Vertex subsets as bitmasks (bit v = vertex v).
using VertexMask = std::uint32_t;

VertexSet mask_to_set(VertexMask mask);
VertexMask set_to_mask(const VertexSet& set);

/// Values of every valid vertex set at the point: sets are enumerated as
/// masks over all vertices; entries for invalid masks are left empty.
class PointScan {
 public:
  PointScan(const PolyhedronPoint& pt, const Digraph& dg);

  bool feasible() const { return !first_violated_.has_value(); }
  std::optional<VertexMask> first_violated() const { return first_violated_; }
  const std::vector<VertexMask>& tight() const { return tight_; }
  bool is_tight(VertexMask mask) const;
  bool is_valid(VertexMask mask) const;

 private:
  VertexMask terminal_mask_ = 0;
  VertexMask root_bit_ = 0;
  std::vector<VertexMask> tight_;  // ascending
  std::optional<VertexMask> first_violated_;
};

/// C, X, Y, X*, Y* taken verbatim from their definitions over the tight sets.
struct BruteFamilies {
  VertexSet eligible;
  std::vector<VertexSet> x_family;
  std::vector<VertexSet> y_family;
  std::vector<VertexSet> maximal_x;
  std::vector<VertexSet> minimal_y;
};

BruteFamilies brute_force_families(const PointScan& scan, const PolyhedronPoint& pt,
                                   const Digraph& dg, VertexId centre, VertexId sink);

/// Conditions (a)-(d) for K against the brute-force families, plus the
/// direct tight-set test (no tight set crossed by K is crossed by two of
/// its arcs, and no tight set not crossed by K is left by any arc of K).
/// Returns an empty string on success, else a description.
std::string check_feasibility_conditions(const DirectedFullComponent& k, const BruteFamilies& fam,
                                         const PointScan& scan, const PolyhedronPoint& pt,
                                         const Digraph& dg);

/// For every pair of tight sets S, T sharing a terminal, S & T and S | T
/// must be tight. Returns the number of pairs checked; failures counted in
/// `violations`.
std::int64_t check_uncrossing(const PointScan& scan, std::int64_t& violations);

/// Decomposition observer that audits each step against brute force.
/// Intended for instances with at most 8 terminals and 20 vertices.
class OracleAuditor {
 public:
  explicit OracleAuditor(const Digraph& dg) : dg_(&dg) {}

  void operator()(const StepRecord& record);

  std::int64_t steps = 0;
  std::int64_t family_mismatches = 0;
  std::int64_t condition_failures = 0;
  std::int64_t membership_failures = 0;
  std::int64_t tightness_lost = 0;
  std::int64_t uncrossing_pairs = 0;
  std::int64_t uncrossing_violations = 0;
  std::vector<std::string> messages;

  bool clean() const {
    return family_mismatches == 0 && condition_failures == 0 && membership_failures == 0 &&
           tightness_lost == 0 && uncrossing_violations == 0;
  }

 private:
  const Digraph* dg_;
};

}  // namespace qbst
