#pragma once

#include <cstdint>

#include "qbst/model.hpp"

namespace qbst {

struct RandomInstanceParams {
  int min_vertices = 3;
  int max_vertices = 12;
  int min_terminals = 2;
  int max_terminals = 7;
  int max_numerator = 20;   // costs p/q with 1 <= p <= max_numerator
  int max_denominator = 5;  // and 1 <= q <= max_denominator
  double steiner_edge_probability = 0.5;   // terminal-Steiner pairs
  double terminal_edge_probability = 0.25; // terminal-terminal pairs
};

/// Connected quasi-bipartite instance with strictly positive rational
/// costs. Deterministic for a given (params, seed).
Instance random_quasi_bipartite(const RandomInstanceParams& params, std::uint64_t seed);

/// Minimal feasible BCR point: the average of 2-4 random Steiner
/// arborescences (random spanning trees oriented to the root, non-terminal
/// leaves pruned), passed through make_minimal. Usually fractional, and a
/// much richer decomposition input than LP optima of small instances.
ArcVector random_minimal_point(const Instance& inst, const Digraph& dg, std::uint64_t seed);

}  // namespace qbst
