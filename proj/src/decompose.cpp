#include "qbst/decompose.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <string>

#include "json.hpp"

#include "qbst/error.hpp"

namespace qbst {

namespace {

VertexSet restrict_to(const std::vector<int>& side, const VertexSet& universe) {
  VertexSet out;
  std::set_intersection(side.begin(), side.end(), universe.begin(), universe.end(),
                        std::back_inserter(out));
  return out;
}

VertexSet vertex_part(const std::vector<int>& side, int vertex_count) {
  VertexSet out;
  for (int v : side) {
    if (v < vertex_count) out.push_back(v);
  }
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

// Keeps the inclusion-wise maximal (or minimal) members of a deduplicated family.
std::vector<VertexSet> extremal(std::vector<VertexSet> family, bool keep_maximal) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<VertexSet> out;
  for (const VertexSet& a : family) {
    bool dominated = false;
    for (const VertexSet& b : family) {
      if (a == b) continue;
      if (keep_maximal ? is_subset(a, b) : is_subset(b, a)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

// Minimum cut of the support network after the caller's augmentation.
template <class Augment>
MinCuts probe(const SupportNetwork& base, Augment&& augment) {
  FlowNetwork net = base.network;
  augment(net, base.super_source);
  return min_cuts(net);
}

// Tightness test shared by the three family probes: feasibility of the
// point guarantees every cut is at least 1.
bool is_tight(const MinCuts& cuts, const char* probe_name) {
  if (cuts.value.is_infinite()) return false;
  if (cuts.value.value() < 1) {
    throw Error(ErrorCode::InvariantBreach,
                std::string(probe_name) + " probe found a violated set (value " +
                    to_string(cuts.value.value()) + ")");
  }
  return cuts.value.value() == 1;
}

nlohmann::json trace_record(const DirectedFullComponent& k, const Rational& lambda,
                            const char* kind) {
  nlohmann::json rec;
  rec["centre"] = k.centre ? nlohmann::json(*k.centre) : nlohmann::json(nullptr);
  rec["sink"] = k.sink;
  rec["sources"] = k.sources;
  rec["lambda"] = to_string(lambda);
  rec["kind"] = kind;
  return rec;
}

}  // namespace

ArcVector phi(const ComponentVector& y, const Digraph& dg) {
  ArcVector x;
  for (const auto& [k, weight] : y.entries()) {
    for (ArcId a : k.arcs) {
      if (a < 0 || a >= dg.arc_count()) throw Error(ErrorCode::InvalidArgument, "component arc not in digraph");
      x.add(a, weight);
    }
  }
  return x;
}

SupportNetwork build_support_digraph(const PolyhedronPoint& pt, const Digraph& dg) {
  const int n = dg.vertex_count();
  SupportNetwork sn{FlowNetwork(n + 1, n, dg.root()), n, {}};
  for (const auto& [a, value] : pt.x.entries()) {
    sn.network.add_arc(dg.arc(a).tail, dg.arc(a).head, Capacity(value));
  }
  for (const auto& [k, weight] : pt.y.entries()) {
    const int node = sn.network.add_node();
    sn.component_nodes.push_back(node);
    for (VertexId w : k.sources) sn.network.add_arc(w, node, Capacity::infinite());
    sn.network.add_arc(node, k.sink, Capacity(weight));
  }
  return sn;
}

Rational constraint_value(const PolyhedronPoint& pt, const Digraph& dg, std::span<const VertexId> set) {
  const auto mask = membership(dg.vertex_count(), set);
  return pt.x.sum(cut_arcs(dg, set)) + pt.y.crossing_weight(mask);
}

FeasibilityFamilies compute_families(const PolyhedronPoint& pt, const Digraph& dg, VertexId centre,
                                     VertexId sink, Execution execution) {
  const VertexId root = dg.root();
  FeasibilityFamilies fam;
  fam.centre = centre;
  fam.sink = sink;

  std::vector<VertexId> candidates;
  for (VertexId w : dg.neighbours(centre)) {
    if (w == sink) continue;
    const auto a = dg.find_arc(w, centre);
    if (a && pt.x.get(*a) > 0) candidates.push_back(w);
  }

  const SupportNetwork base = build_support_digraph(pt, dg);

  // C: no tight valid set holds both w and the sink while missing the centre.
  std::vector<char> eligible(candidates.size(), 0);
  for_each_index(execution, candidates.size(), [&](std::size_t i) {
    const VertexId w = candidates[i];
    if (w == root || sink == root) {
      eligible[i] = 1;
      return;
    }
    const MinCuts cuts = probe(base, [&](FlowNetwork& net, int s) {
      net.add_arc(s, w, Capacity::infinite());
      net.add_arc(s, sink, Capacity::infinite());
      net.add_arc(centre, root, Capacity::infinite());
    });
    eligible[i] = is_tight(cuts, "eligibility") ? 0 : 1;
  });
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (eligible[i]) fam.eligible.push_back(candidates[i]);
  }

  const VertexSet& c = fam.eligible;
  std::vector<std::optional<VertexSet>> x_sets(c.size());
  std::vector<std::optional<VertexSet>> y_sets(c.size());
  for_each_index(execution, c.size(), [&](std::size_t i) {
    const VertexId w = c[i];
    if (w == root) return;
    // X: tight sets containing w that avoid both the centre and the sink.
    const MinCuts xc = probe(base, [&](FlowNetwork& net, int s) {
      net.add_arc(s, w, Capacity::infinite());
      net.add_arc(centre, sink, Capacity::infinite());
      if (sink != root) net.add_arc(sink, root, Capacity::infinite());
    });
    if (is_tight(xc, "X")) x_sets[i] = restrict_to(xc.maximal, c);
    // Y: tight sets containing w and the centre but not the sink.
    const MinCuts yc = probe(base, [&](FlowNetwork& net, int s) {
      net.add_arc(s, w, Capacity::infinite());
      net.add_arc(s, centre, Capacity::infinite());
      if (sink != root) net.add_arc(sink, root, Capacity::infinite());
    });
    if (is_tight(yc, "Y")) y_sets[i] = restrict_to(yc.minimal, c);
  });

  std::vector<VertexSet> xs;
  std::vector<VertexSet> ys;
  for (auto& s : x_sets) {
    if (s) xs.push_back(std::move(*s));
  }
  for (auto& s : y_sets) {
    if (s) ys.push_back(std::move(*s));
  }
  fam.maximal_x = extremal(std::move(xs), true);
  fam.minimal_y = extremal(std::move(ys), false);
  return fam;
}

DirectedFullComponent find_feasible_component(const FeasibilityFamilies& fam,
                                              const PolyhedronPoint& pt, const Digraph& dg) {
  const VertexId v = fam.centre;
  const VertexId u = fam.sink;
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::NoFeasibleComponent,
                 "centre " + std::to_string(v) + ", sink " + std::to_string(u) + ": " + why);
  };
  const auto sink_arc = dg.find_arc(v, u);
  if (!sink_arc || pt.x.get(*sink_arc) <= 0) throw fail("sink arc carries no weight");
  if (fam.eligible.empty()) throw fail("no eligible source");

  if (fam.minimal_y.empty()) {
    VertexId best = fam.eligible.front();
    Rational best_value = pt.x.get(*dg.find_arc(best, v));
    for (VertexId w : fam.eligible) {
      const Rational value = pt.x.get(*dg.find_arc(w, v));
      if (value > best_value) {
        best = w;
        best_value = value;
      }
    }
    return make_component(dg, v, u, VertexSet{best});
  }

  // Left side: X*-sets plus a singleton for each eligible terminal they miss.
  std::vector<VertexSet> left = fam.maximal_x;
  for (VertexId w : fam.eligible) {
    const bool covered = std::any_of(left.begin(), left.end(), [&](const VertexSet& s) {
      return std::binary_search(s.begin(), s.end(), w);
    });
    if (!covered) left.push_back(VertexSet{w});
  }
  std::sort(left.begin(), left.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  const auto& right = fam.minimal_y;

  const int nl = static_cast<int>(left.size());
  const int nr = static_cast<int>(right.size());
  const int s = 0;
  const int t = 1 + nl + nr;
  FlowNetwork net(t + 1, s, t);
  for (int i = 0; i < nl; ++i) net.add_arc(s, 1 + i, Capacity(1));
  struct Pair {
    int arc;
    int l;
    int r;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < nl; ++i) {
    for (int j = 0; j < nr; ++j) {
      if (intersects(left[static_cast<std::size_t>(i)], right[static_cast<std::size_t>(j)])) {
        pairs.push_back({net.add_arc(1 + i, 1 + nl + j, Capacity(1)), i, j});
      }
    }
  }
  for (int j = 0; j < nr; ++j) net.add_arc(1 + nl + j, t, Capacity(1));

  const MaxFlowResult flow = max_flow(net);
  if (flow.value != Capacity(nr)) throw fail("matching covers fewer than all Y* sets");

  VertexSet sources;
  for (const Pair& p : pairs) {
    if (flow.flow[static_cast<std::size_t>(p.arc)] == 0) continue;
    VertexSet shared;
    const auto& a = left[static_cast<std::size_t>(p.l)];
    const auto& b = right[static_cast<std::size_t>(p.r)];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    sources.push_back(shared.front());
  }
  return make_component(dg, v, u, std::move(sources));
}

StepResult max_step_lambda(const PolyhedronPoint& pt, const DirectedFullComponent& k,
                           const Digraph& dg, Execution execution) {
  StepResult result;
  result.component = k;
  bool first = true;
  for (ArcId a : k.arcs) {
    const Rational value = pt.x.get(a);
    if (first || value < result.lambda) result.lambda = value;
    first = false;
  }
  if (result.lambda <= 0) {
    throw Error(ErrorCode::InvariantBreach, "component uses an arc of zero weight");
  }

  std::vector<VertexId> terminals;
  for (VertexId t : dg.terminals()) {
    if (t != dg.root()) terminals.push_back(t);
  }
  std::optional<int> last_alpha;
  for (;;) {
    PolyhedronPoint trial = pt;
    for (ArcId a : k.arcs) trial.x.add(a, -result.lambda);
    trial.y.add(k, result.lambda);
    const SupportNetwork base = build_support_digraph(trial, dg);

    std::vector<MinCuts> cuts(terminals.size());
    for_each_index(execution, terminals.size(), [&](std::size_t i) {
      cuts[i] = probe(base, [&](FlowNetwork& net, int s) {
        net.add_arc(s, terminals[i], Capacity::infinite());
      });
    });
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (cuts[i].value.is_infinite()) continue;
      if (!worst || cuts[i].value < cuts[*worst].value) worst = i;
    }
    if (!worst || cuts[*worst].value.value() >= 1) break;

    const VertexSet set = vertex_part(cuts[*worst].minimal, dg.vertex_count());
    const auto mask = membership(dg.vertex_count(), set);
    const auto crossing = cut_arcs(dg, set);
    int arcs_in_cut = 0;
    for (ArcId a : k.arcs) {
      if (std::binary_search(crossing.begin(), crossing.end(), a)) ++arcs_in_cut;
    }
    const int alpha = arcs_in_cut - (component_crosses(k, mask) ? 1 : 0);
    const Rational slack = constraint_value(pt, dg, set) - 1;
    if (alpha < 1 || slack <= 0 || (last_alpha && alpha >= *last_alpha)) {
      throw Error(ErrorCode::InvariantBreach, "step search lost monotonicity (alpha " +
                                                  std::to_string(alpha) + ", slack " +
                                                  to_string(slack) + ")");
    }
    const Rational next = slack / alpha;
    if (next >= result.lambda) {
      throw Error(ErrorCode::InvariantBreach, "violated set did not shrink the step");
    }
    result.lambda = next;
    result.binding_set = set;
    last_alpha = alpha;
    ++result.rounds;
  }
  result.kind = result.binding_set ? StepKind::set_binding : StepKind::saturating;
  return result;
}

DecomposeResult decompose(const ArcVector& x, const Digraph& dg, const DecomposeOptions& options) {
  DecomposeResult result;
  PolyhedronPoint pt{x, {}};

  std::vector<ArcId> centre_arcs;
  for (ArcId a = 0; a < dg.arc_count(); ++a) {
    if (!dg.is_terminal(dg.arc(a).tail) && dg.is_terminal(dg.arc(a).head)) centre_arcs.push_back(a);
  }
  std::sort(centre_arcs.begin(), centre_arcs.end(), [&](ArcId a, ArcId b) {
    return std::pair(dg.arc(a).tail, dg.arc(a).head) < std::pair(dg.arc(b).tail, dg.arc(b).head);
  });

  const std::size_t budget =
      100 * (static_cast<std::size_t>(dg.arc_count()) + 1) * (static_cast<std::size_t>(dg.vertex_count()) + 1);
  for (ArcId sink_arc : centre_arcs) {
    const VertexId v = dg.arc(sink_arc).tail;
    const VertexId u = dg.arc(sink_arc).head;
    while (pt.x.get(sink_arc) > 0) {
      if (result.iterations >= budget) {
        throw Error(ErrorCode::InvariantBreach, "decomposition exceeded its step budget");
      }
      const FeasibilityFamilies fam = compute_families(pt, dg, v, u, options.execution);
      const DirectedFullComponent k = find_feasible_component(fam, pt, dg);
      const StepResult step = max_step_lambda(pt, k, dg, options.execution);

      PolyhedronPoint next = pt;
      for (ArcId a : k.arcs) next.x.add(a, -step.lambda);
      next.y.add(k, step.lambda);

      if (step.kind == StepKind::saturating) ++result.saturating_steps;
      if (options.trace) {
        *options.trace
            << trace_record(k, step.lambda,
                            step.kind == StepKind::saturating ? "saturating" : "set-binding")
                   .dump()
            << '\n';
      }
      if (options.observer) {
        options.observer(StepRecord{result.iterations, &pt, &next, &fam, &step});
      }
      pt = std::move(next);
      ++result.iterations;
    }
  }

  for (const auto& [a, value] : ArcVector::Map(pt.x.entries())) {
    const Arc& arc = dg.arc(a);
    if (!dg.is_terminal(arc.tail) || !dg.is_terminal(arc.head)) {
      throw Error(ErrorCode::InvariantBreach, "arc " + std::to_string(arc.tail) + "->" +
                                                  std::to_string(arc.head) +
                                                  " keeps weight after all centres were drained");
    }
    const DirectedFullComponent k = make_component(dg, std::nullopt, arc.head, VertexSet{arc.tail});
    pt.y.add(k, value);
    pt.x.set(a, 0);
    ++result.terminal_components;
    if (options.trace) *options.trace << trace_record(k, value, "terminal-arc").dump() << '\n';
  }

  if (!(phi(pt.y, dg) == x)) {
    throw Error(ErrorCode::InvariantBreach, "decomposition does not reproduce the input arc vector");
  }
  result.y = std::move(pt.y);
  return result;
}

}  // namespace qbst
