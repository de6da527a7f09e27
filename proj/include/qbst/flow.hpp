#pragma once

#include <compare>
#include <vector>

#include "qbst/rational.hpp"

namespace qbst {

/// Non-negative capacity that is either an exact rational or a symbolic
/// infinity. Infinity absorbs addition and compares above every finite value.
class Capacity {
 public:
  Capacity() = default;
  Capacity(Rational value);  // NOLINT(google-explicit-constructor)
  Capacity(int value) : Capacity(Rational(value)) {}  // NOLINT

  static Capacity infinite();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Finite value; zero for an infinite capacity.
  const Rational& value() const { return value_; }

  friend Capacity operator+(const Capacity& a, const Capacity& b);
  friend bool operator==(const Capacity& a, const Capacity& b);
  friend std::strong_ordering operator<=>(const Capacity& a, const Capacity& b);

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

std::string to_string(const Capacity& c);

struct FlowArc {
  int tail = 0;
  int head = 0;
  Capacity capacity;
};

/// Capacitated digraph with designated source and sink. Nodes are 0..n-1.
class FlowNetwork {
 public:
  FlowNetwork(int node_count, int source, int sink);

  int add_node();
  int add_arc(int tail, int head, Capacity capacity);
  void set_source(int s) { source_ = s; }
  void set_sink(int t) { sink_ = t; }

  int node_count() const { return node_count_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }

 private:
  int node_count_;
  int source_;
  int sink_;
  std::vector<FlowArc> arcs_;
};

struct MaxFlowResult {
  Capacity value;
  /// Flow per arc, indexed like FlowNetwork::arcs(). Meaningless when the
  /// value is infinite.
  std::vector<Rational> flow;
};

struct CutResult {
  Capacity value;
  /// Sorted node ids; contains the source, never the sink.
  std::vector<int> source_side;
};

/// Both extreme minimum cuts from a single max-flow computation.
struct MinCuts {
  Capacity value;
  std::vector<int> minimal;
  std::vector<int> maximal;
};

/// Shortest-augmenting-path max-flow over exact rationals.
MaxFlowResult max_flow(const FlowNetwork& net);

/// Inclusion-wise minimal minimum cut (residual reachability from s).
/// Throws Error(NoFiniteCut) when the max-flow is infinite.
CutResult min_cut_minimal(const FlowNetwork& net);

/// Inclusion-wise maximal minimum cut (complement of the nodes that reach t
/// in the residual network). Throws Error(NoFiniteCut).
CutResult min_cut_maximal(const FlowNetwork& net);

/// Value and both extreme cuts; when the value is infinite, the cut lists
/// are empty instead of throwing.
MinCuts min_cuts(const FlowNetwork& net);

/// Capacity of the arcs leaving `source_side`.
Capacity cut_capacity(const FlowNetwork& net, const std::vector<int>& source_side);

}  // namespace qbst
