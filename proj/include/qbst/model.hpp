#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qbst/rational.hpp"

namespace qbst {

using VertexId = int;
using ArcId = int;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational cost;
};

/// Unvalidated input as read from a file or produced by a generator.
struct RawInstance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<VertexId> terminals;
  std::optional<VertexId> root;  // defaults to the lowest terminal id
};

/// Validated quasi-bipartite instance. Edges are canonical: u < v, sorted
/// by (u, v), at most one edge per vertex pair.
class Instance {
 public:
  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& terminals() const { return terminals_; }
  VertexId root() const { return root_; }
  bool is_terminal(VertexId v) const { return is_terminal_[static_cast<std::size_t>(v)] != 0; }
  std::vector<VertexId> steiner_vertices() const;

  friend Instance validate_instance(RawInstance raw);

 private:
  Instance() = default;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexId> terminals_;
  std::vector<char> is_terminal_;
  VertexId root_ = 0;
};

/// Canonicalizes (parallel edges collapsed to the cheapest) and checks the
/// quasi-bipartite invariants. Throws Error on violation.
Instance validate_instance(RawInstance raw);

/// Shortest-path closure restricted to the pairs a quasi-bipartite instance
/// may join: every terminal-terminal and terminal-Steiner pair connected in
/// G gets an edge costing its shortest-path distance. Steiner-Steiner pairs
/// stay non-adjacent. Optimal tree cost is unchanged.
Instance shortest_path_closure(const Instance& inst);

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  Rational cost;
  int edge = 0;
};

/// Bidirected version of an Instance. Edge e = (u, v) with u < v yields arc
/// 2e = (u, v) and arc 2e + 1 = (v, u).
class Digraph {
 public:
  int vertex_count() const { return vertex_count_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<VertexId>& terminals() const { return terminals_; }
  VertexId root() const { return root_; }
  bool is_terminal(VertexId v) const { return is_terminal_[static_cast<std::size_t>(v)] != 0; }
  std::optional<ArcId> find_arc(VertexId tail, VertexId head) const;
  const std::vector<ArcId>& out_arcs(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<ArcId>& in_arcs(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }

  /// Neighbours of v in the underlying undirected graph, ascending.
  std::vector<VertexId> neighbours(VertexId v) const;

  friend Digraph bidirect(const Instance& inst);

 private:
  int vertex_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<VertexId> terminals_;
  std::vector<char> is_terminal_;
  VertexId root_ = 0;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

Digraph bidirect(const Instance& inst);

/// Membership mask over vertex ids, the representation used in hot loops.
std::vector<char> membership(int vertex_count, std::span<const VertexId> set);

/// delta+(U): arcs with tail in U and head outside U, ascending ids.
std::vector<ArcId> cut_arcs(const Digraph& dg, std::span<const VertexId> set);

/// Directed full component. Ordering and equality use (centre, sink,
/// sources) only; arcs and cost are derived from those.
struct DirectedFullComponent {
  std::optional<VertexId> centre;
  VertexId sink = 0;
  VertexSet sources;
  std::vector<ArcId> arcs;
  Rational cost;

  friend bool operator==(const DirectedFullComponent& a, const DirectedFullComponent& b) {
    return a.centre == b.centre && a.sink == b.sink && a.sources == b.sources;
  }
  friend std::strong_ordering operator<=>(const DirectedFullComponent& a,
                                          const DirectedFullComponent& b) {
    const VertexId ca = a.centre.value_or(-1);
    const VertexId cb = b.centre.value_or(-1);
    if (auto c = ca <=> cb; c != 0) return c;
    if (auto c = a.sink <=> b.sink; c != 0) return c;
    return a.sources <=> b.sources;
  }
};

/// Builds the star oriented toward `sink` (or a single terminal arc when
/// centre is empty). Throws Error(InvalidArgument) if an arc is missing or
/// the shape is malformed.
DirectedFullComponent make_component(const Digraph& dg, std::optional<VertexId> centre,
                                     VertexId sink, VertexSet sources);

/// Delta+_K(U) for U given as a vertex membership mask (only terminals are
/// consulted): the sink lies outside U and some source lies inside.
bool component_crosses(const DirectedFullComponent& k, std::span<const char> in_set);

/// Sparse non-negative arc assignment; zero entries are never stored.
class ArcVector {
 public:
  using Map = std::map<ArcId, Rational>;

  Rational get(ArcId a) const;
  void set(ArcId a, const Rational& value);
  void add(ArcId a, const Rational& delta);
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Sum of values over the given arcs.
  Rational sum(std::span<const ArcId> arcs) const;
  Rational cost(const Digraph& dg) const;

  friend bool operator==(const ArcVector&, const ArcVector&) = default;

 private:
  Map entries_;
};

/// Sparse positive weights on directed full components.
class ComponentVector {
 public:
  using Map = std::map<DirectedFullComponent, Rational>;

  Rational get(const DirectedFullComponent& k) const;
  void add(const DirectedFullComponent& k, const Rational& delta);
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// y(Delta+(U)) for U given as a vertex membership mask.
  Rational crossing_weight(std::span<const char> in_set) const;
  Rational cost() const;
  Rational total() const;

 private:
  Map entries_;
};

}  // namespace qbst
