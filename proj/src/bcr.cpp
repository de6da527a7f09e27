#include "qbst/bcr.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <set>

#include "qbst/error.hpp"
#include "qbst/flow.hpp"
#include "qbst/simplex.hpp"

namespace qbst {

namespace {

// Nodes 0..n-1 are the digraph's vertices; one arc per support arc of x.
FlowNetwork support_network(const Digraph& dg, const ArcVector& x, int extra_nodes, int source) {
  FlowNetwork net(dg.vertex_count() + extra_nodes, source, dg.root());
  for (const auto& [a, value] : x.entries()) {
    net.add_arc(dg.arc(a).tail, dg.arc(a).head, Capacity(value));
  }
  return net;
}

VertexSet vertices_only(const Digraph& dg, const std::vector<int>& side) {
  VertexSet out;
  for (int v : side) {
    if (v < dg.vertex_count()) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> non_root_terminals(const Digraph& dg) {
  std::vector<VertexId> out;
  for (VertexId t : dg.terminals()) {
    if (t != dg.root()) out.push_back(t);
  }
  return out;
}

void require_connected(const Digraph& dg) {
  std::vector<char> seen(static_cast<std::size_t>(dg.vertex_count()), 0);
  std::deque<VertexId> queue{dg.root()};
  seen[static_cast<std::size_t>(dg.root())] = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (ArcId a : dg.in_arcs(v)) {
      const VertexId u = dg.arc(a).tail;
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        queue.push_back(u);
      }
    }
  }
  for (VertexId t : dg.terminals()) {
    if (!seen[static_cast<std::size_t>(t)]) {
      throw Error(ErrorCode::Infeasible, "terminal " + std::to_string(t) + " cannot reach the root");
    }
  }
}

}  // namespace

std::vector<ViolatedSet> separate(const Digraph& dg, const ArcVector& x, Execution execution) {
  const auto sources = non_root_terminals(dg);
  std::vector<std::optional<ViolatedSet>> found(sources.size());
  for_each_index(execution, sources.size(), [&](std::size_t i) {
    const FlowNetwork net = support_network(dg, x, 0, sources[i]);
    MinCuts cuts = min_cuts(net);
    if (cuts.value.is_finite() && cuts.value.value() < 1) {
      found[i] = ViolatedSet{vertices_only(dg, cuts.minimal), cuts.value.value()};
    }
  });
  std::vector<ViolatedSet> out;
  std::set<VertexSet> seen;
  for (auto& f : found) {
    if (f && seen.insert(f->set).second) out.push_back(std::move(*f));
  }
  return out;
}

ArcVector make_minimal(const Digraph& dg, ArcVector x, Execution execution) {
  const auto terminals = non_root_terminals(dg);
  const int s = dg.vertex_count();
  std::vector<ArcId> support;
  for (const auto& [a, value] : x.entries()) support.push_back(a);

  for (ArcId a : support) {
    const Rational current = x.get(a);
    const VertexId p = dg.arc(a).tail;
    const VertexId q = dg.arc(a).head;
    std::optional<Rational> slack;  // empty: no valid set is crossed by a
    if (p != dg.root()) {
      std::vector<std::optional<Rational>> values(terminals.size());
      for_each_index(execution, terminals.size(), [&](std::size_t i) {
        const VertexId w = terminals[i];
        if (w == q) return;
        FlowNetwork net = support_network(dg, x, 1, s);
        net.add_arc(s, p, Capacity::infinite());
        net.add_arc(s, w, Capacity::infinite());
        if (q != dg.root()) net.add_arc(q, dg.root(), Capacity::infinite());
        const MaxFlowResult flow = max_flow(net);
        if (flow.value.is_finite()) values[i] = flow.value.value();
      });
      for (const auto& v : values) {
        if (v && (!slack || *v - 1 < *slack)) slack = *v - 1;
      }
    }
    if (slack && *slack < 0) {
      throw Error(ErrorCode::InvariantBreach, "make_minimal called on an infeasible point");
    }
    const Rational decrease = slack ? std::min(current, *slack) : current;
    x.set(a, current - decrease);
  }
  return x;
}

BcrSolution solve_bcr(const Digraph& dg, const BcrOptions& options) {
  BcrSolution sol;
  const auto terminals = non_root_terminals(dg);
  if (terminals.empty()) {
    sol.objective_value = 0;
    sol.is_minimal = true;
    return sol;
  }
  require_connected(dg);

  std::set<VertexSet> known;
  auto add_cut = [&](VertexSet set) {
    if (!known.insert(set).second) return false;
    if (options.cut_log) {
      *options.cut_log << "U:";
      for (VertexId v : set) *options.cut_log << ' ' << v;
      *options.cut_log << '\n';
    }
    sol.generated_cuts.push_back(std::move(set));
    return true;
  };
  for (VertexId w : terminals) add_cut(VertexSet{w});

  LinearProgram lp;
  lp.variable_count = dg.arc_count();
  for (const Arc& arc : dg.arcs()) lp.objective.push_back(arc.cost);

  ArcVector x;
  std::size_t encoded = 0;
  for (;;) {
    for (; encoded < sol.generated_cuts.size(); ++encoded) {
      LinearConstraint c;
      for (ArcId a : cut_arcs(dg, sol.generated_cuts[encoded])) c.terms.emplace_back(a, Rational(1));
      c.rhs = 1;
      lp.constraints.push_back(std::move(c));
    }
    const LpSolution lp_sol = simplex_solve(lp);
    ++sol.lp_rounds;
    x = ArcVector{};
    for (ArcId a = 0; a < dg.arc_count(); ++a) x.set(a, lp_sol.values[static_cast<std::size_t>(a)]);

    bool added = false;
    for (ViolatedSet& v : separate(dg, x, options.execution)) {
      if (!add_cut(std::move(v.set))) {
        throw Error(ErrorCode::InvariantBreach, "separation returned a cut already in the LP");
      }
      added = true;
    }
    if (!added) break;
  }

  sol.x = make_minimal(dg, std::move(x), options.execution);
  if (!separate(dg, sol.x, options.execution).empty()) {
    throw Error(ErrorCode::InvariantBreach, "minimal BCR point fails certification");
  }
  sol.objective_value = sol.x.cost(dg);
  sol.is_minimal = true;
  return sol;
}

}  // namespace qbst
