#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qbst/model.hpp"
#include "qbst/parallel.hpp"

namespace qbst {

/// Upper bound on ln 3 used for the round count (error below 1e-16).
Rational ln3_upper_bound();

/// Centre distribution for the BCR-based sampler: Steiner vertex v is drawn
/// with probability x(delta+(v)) / M.
struct SamplingPlan {
  std::map<VertexId, Rational> mass_per_centre;  // positive masses only
  Rational total_mass;                           // M
  std::int64_t rounds = 0;                       // ceil(M * ln 3)
  std::uint64_t seed = 0;
};

struct SampledTree {
  std::vector<VertexId> sampled_vertices;  // draw order, with repeats
  std::vector<int> tree_edges;             // instance edge ids, ascending
  Rational cost;
  int retries = 0;
};

inline constexpr int kSamplerRetryBudget = 64;

/// Throws Error(ZeroMass) if M = 0 while more than one terminal exists.
SamplingPlan build_plan(const ArcVector& x, const Instance& inst, const Digraph& dg, std::uint64_t seed);

/// One sampling run on the generator stream derived from (plan.seed, trial).
/// Draws are redrawn wholesale when the induced subgraph is disconnected.
SampledTree sample_tree(const SamplingPlan& plan, const Instance& inst, std::uint64_t trial = 0);

/// Independent trials 0..count-1; identical output for either execution.
std::vector<SampledTree> sample_trials(const SamplingPlan& plan, const Instance& inst, std::size_t count,
                                       Execution execution = Execution::parallel);

/// Minimum spanning tree of the subgraph induced on `vertices` (sorted),
/// ties broken by edge id. Empty optional when that subgraph is disconnected.
std::optional<std::vector<int>> induced_mst(const Instance& inst, const VertexSet& vertices);

/// For every Steiner v: total weight of components centred at v equals
/// x(delta+(v)), exactly.
bool verify_distribution(const ArcVector& x, const ComponentVector& y, const Digraph& dg);

}  // namespace qbst
