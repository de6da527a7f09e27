#include "qbst/model.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "qbst/error.hpp"

namespace qbst {

namespace {

void check_vertex(int vertex_count, VertexId v, const char* what) {
  if (v < 0 || v >= vertex_count) {
    throw Error(ErrorCode::InvalidVertex,
                std::string(what) + " " + std::to_string(v) + " out of range [0, " +
                    std::to_string(vertex_count) + ")");
  }
}

}  // namespace

std::vector<VertexId> Instance::steiner_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count_; ++v) {
    if (!is_terminal(v)) out.push_back(v);
  }
  return out;
}

Instance validate_instance(RawInstance raw) {
  if (raw.vertex_count < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  if (raw.terminals.empty()) throw Error(ErrorCode::EmptyTerminalSet, "no terminals given");

  Instance inst;
  inst.vertex_count_ = raw.vertex_count;
  inst.is_terminal_.assign(static_cast<std::size_t>(raw.vertex_count), 0);
  for (VertexId t : raw.terminals) {
    check_vertex(raw.vertex_count, t, "terminal");
    inst.is_terminal_[static_cast<std::size_t>(t)] = 1;
  }
  std::sort(raw.terminals.begin(), raw.terminals.end());
  raw.terminals.erase(std::unique(raw.terminals.begin(), raw.terminals.end()),
                      raw.terminals.end());
  inst.terminals_ = std::move(raw.terminals);

  const VertexId root = raw.root.value_or(inst.terminals_.front());
  check_vertex(raw.vertex_count, root, "root");
  if (!inst.is_terminal(root)) {
    throw Error(ErrorCode::RootNotTerminal, "root " + std::to_string(root) + " is not a terminal");
  }
  inst.root_ = root;

  for (Edge& e : raw.edges) {
    check_vertex(raw.vertex_count, e.u, "edge endpoint");
    check_vertex(raw.vertex_count, e.v, "edge endpoint");
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at " + std::to_string(e.u));
    if (e.cost < 0) {
      throw Error(ErrorCode::NegativeCost, "edge " + std::to_string(e.u) + "-" +
                                               std::to_string(e.v) + " has cost " +
                                               to_string(e.cost));
    }
    if (!inst.is_terminal(e.u) && !inst.is_terminal(e.v)) {
      throw Error(ErrorCode::SteinerSteinerEdge,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                      " joins two Steiner vertices");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(raw.edges.begin(), raw.edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.cost < b.cost;
  });
  for (Edge& e : raw.edges) {
    if (!inst.edges_.empty() && inst.edges_.back().u == e.u && inst.edges_.back().v == e.v) {
      continue;  // cheapest parallel edge already kept
    }
    inst.edges_.push_back(std::move(e));
  }
  return inst;
}

std::optional<ArcId> Digraph::find_arc(VertexId tail, VertexId head) const {
  for (ArcId a : out_arcs(tail)) {
    if (arc(a).head == head) return a;
  }
  return std::nullopt;
}

std::vector<VertexId> Digraph::neighbours(VertexId v) const {
  std::vector<VertexId> out;
  for (ArcId a : out_arcs(v)) out.push_back(arc(a).head);
  std::sort(out.begin(), out.end());
  return out;
}

Instance shortest_path_closure(const Instance& inst) {
  // Floyd-Warshall over exact rationals; instances here are small.
  const auto n = static_cast<std::size_t>(inst.vertex_count());
  std::vector<std::optional<Rational>> dist(n * n);
  for (std::size_t v = 0; v < n; ++v) dist[v * n + v] = Rational(0);
  for (const Edge& e : inst.edges()) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    dist[u * n + v] = e.cost;
    dist[v * n + u] = e.cost;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!dist[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dist[k * n + j]) continue;
        Rational via = *dist[i * n + k] + *dist[k * n + j];
        auto& cur = dist[i * n + j];
        if (!cur || via < *cur) cur = std::move(via);
      }
    }
  }
  RawInstance raw;
  raw.vertex_count = inst.vertex_count();
  raw.terminals = inst.terminals();
  raw.root = inst.root();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto a = static_cast<VertexId>(u);
      const auto b = static_cast<VertexId>(v);
      if (!inst.is_terminal(a) && !inst.is_terminal(b)) continue;
      if (dist[u * n + v]) raw.edges.push_back(Edge{a, b, *dist[u * n + v]});
    }
  }
  return validate_instance(std::move(raw));
}

Digraph bidirect(const Instance& inst) {
  Digraph dg;
  dg.vertex_count_ = inst.vertex_count();
  dg.terminals_ = inst.terminals();
  dg.root_ = inst.root();
  dg.is_terminal_.assign(static_cast<std::size_t>(inst.vertex_count()), 0);
  for (VertexId t : inst.terminals()) dg.is_terminal_[static_cast<std::size_t>(t)] = 1;
  dg.out_.resize(static_cast<std::size_t>(inst.vertex_count()));
  dg.in_.resize(static_cast<std::size_t>(inst.vertex_count()));
  const auto& edges = inst.edges();
  dg.arcs_.reserve(edges.size() * 2);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    dg.arcs_.push_back(Arc{edge.u, edge.v, edge.cost, static_cast<int>(e)});
    dg.arcs_.push_back(Arc{edge.v, edge.u, edge.cost, static_cast<int>(e)});
  }
  for (ArcId a = 0; a < dg.arc_count(); ++a) {
    dg.out_[static_cast<std::size_t>(dg.arc(a).tail)].push_back(a);
    dg.in_[static_cast<std::size_t>(dg.arc(a).head)].push_back(a);
  }
  return dg;
}

std::vector<char> membership(int vertex_count, std::span<const VertexId> set) {
  std::vector<char> in(static_cast<std::size_t>(vertex_count), 0);
  for (VertexId v : set) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

std::vector<ArcId> cut_arcs(const Digraph& dg, std::span<const VertexId> set) {
  const auto in = membership(dg.vertex_count(), set);
  std::vector<ArcId> out;
  for (ArcId a = 0; a < dg.arc_count(); ++a) {
    const Arc& arc = dg.arc(a);
    if (in[static_cast<std::size_t>(arc.tail)] && !in[static_cast<std::size_t>(arc.head)]) {
      out.push_back(a);
    }
  }
  return out;
}

DirectedFullComponent make_component(const Digraph& dg, std::optional<VertexId> centre,
                                     VertexId sink, VertexSet sources) {
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  if (sources.empty()) throw Error(ErrorCode::InvalidArgument, "component without sources");
  if (std::binary_search(sources.begin(), sources.end(), sink)) {
    throw Error(ErrorCode::InvalidArgument, "component sink is also a source");
  }
  if (!dg.is_terminal(sink)) throw Error(ErrorCode::InvalidArgument, "component sink not a terminal");
  for (VertexId w : sources) {
    if (!dg.is_terminal(w)) throw Error(ErrorCode::InvalidArgument, "component source not a terminal");
  }

  DirectedFullComponent k;
  k.centre = centre;
  k.sink = sink;
  k.sources = std::move(sources);
  auto need = [&](VertexId tail, VertexId head) {
    auto a = dg.find_arc(tail, head);
    if (!a) {
      throw Error(ErrorCode::InvalidArgument, "component needs missing arc " +
                                                  std::to_string(tail) + "->" +
                                                  std::to_string(head));
    }
    k.arcs.push_back(*a);
    k.cost += dg.arc(*a).cost;
  };
  if (centre) {
    if (dg.is_terminal(*centre)) throw Error(ErrorCode::InvalidArgument, "centre is a terminal");
    for (VertexId w : k.sources) need(w, *centre);
    need(*centre, sink);
  } else {
    if (k.sources.size() != 1) {
      throw Error(ErrorCode::InvalidArgument, "centre-less component needs exactly one source");
    }
    need(k.sources.front(), sink);
  }
  std::sort(k.arcs.begin(), k.arcs.end());
  return k;
}

bool component_crosses(const DirectedFullComponent& k, std::span<const char> in_set) {
  if (in_set[static_cast<std::size_t>(k.sink)]) return false;
  return std::any_of(k.sources.begin(), k.sources.end(),
                     [&](VertexId w) { return in_set[static_cast<std::size_t>(w)] != 0; });
}

Rational ArcVector::get(ArcId a) const {
  auto it = entries_.find(a);
  return it == entries_.end() ? Rational(0) : it->second;
}

void ArcVector::set(ArcId a, const Rational& value) {
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "negative arc value");
  if (value == 0) {
    entries_.erase(a);
  } else {
    entries_[a] = value;
  }
}

void ArcVector::add(ArcId a, const Rational& delta) { set(a, get(a) + delta); }

Rational ArcVector::sum(std::span<const ArcId> arcs) const {
  Rational total = 0;
  for (ArcId a : arcs) {
    auto it = entries_.find(a);
    if (it != entries_.end()) total += it->second;
  }
  return total;
}

Rational ArcVector::cost(const Digraph& dg) const {
  Rational total = 0;
  for (const auto& [a, value] : entries_) total += dg.arc(a).cost * value;
  return total;
}

Rational ComponentVector::get(const DirectedFullComponent& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? Rational(0) : it->second;
}

void ComponentVector::add(const DirectedFullComponent& k, const Rational& delta) {
  auto it = entries_.find(k);
  Rational value = (it == entries_.end() ? Rational(0) : it->second) + delta;
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "negative component weight");
  if (value == 0) {
    if (it != entries_.end()) entries_.erase(it);
  } else if (it == entries_.end()) {
    entries_.emplace(k, value);
  } else {
    it->second = value;
  }
}

Rational ComponentVector::crossing_weight(std::span<const char> in_set) const {
  Rational total = 0;
  for (const auto& [k, weight] : entries_) {
    if (component_crosses(k, in_set)) total += weight;
  }
  return total;
}

Rational ComponentVector::cost() const {
  Rational total = 0;
  for (const auto& [k, weight] : entries_) total += k.cost * weight;
  return total;
}

Rational ComponentVector::total() const {
  Rational total = 0;
  for (const auto& [k, weight] : entries_) total += weight;
  return total;
}

}  // namespace qbst
