#include "qbst/random_instance.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qbst/bcr.hpp"
#include "qbst/error.hpp"

namespace qbst {

namespace {

// Portable bounded draw; std::uniform_int_distribution differs between
// standard libraries.
int draw(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

ArcVector random_arborescence(const Instance& inst, const Digraph& dg, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(inst.vertex_count());
  std::vector<std::size_t> order(inst.edges().size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t e : order) {
    const Edge& edge = inst.edges()[e];
    const VertexId a = find(edge.u);
    const VertexId b = find(edge.v);
    if (a == b) continue;
    parent[static_cast<std::size_t>(a)] = b;
    adj[static_cast<std::size_t>(edge.u)].push_back(edge.v);
    adj[static_cast<std::size_t>(edge.v)].push_back(edge.u);
  }

  std::vector<VertexId> up(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> bfs{inst.root()};
  seen[static_cast<std::size_t>(inst.root())] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (VertexId w : adj[static_cast<std::size_t>(bfs[i])]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      up[static_cast<std::size_t>(w)] = bfs[i];
      bfs.push_back(w);
    }
  }
  std::vector<char> keep(n, 0);
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    if (inst.is_terminal(*it)) keep[v] = 1;
    if (keep[v] && up[v] >= 0) keep[static_cast<std::size_t>(up[v])] = 1;
  }
  ArcVector x;
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v] && up[v] >= 0) x.set(*dg.find_arc(static_cast<VertexId>(v), up[v]), 1);
  }
  return x;
}

}  // namespace

Instance random_quasi_bipartite(const RandomInstanceParams& params, std::uint64_t seed) {
  if (params.min_terminals < 1 || params.min_terminals > params.max_terminals ||
      params.min_vertices > params.max_vertices || params.max_numerator < 1 ||
      params.max_denominator < 1) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent random instance parameters");
  }
  std::mt19937_64 rng(seed);
  const int n = draw(rng, std::max(params.min_vertices, params.min_terminals), params.max_vertices);
  const int k = draw(rng, params.min_terminals, std::min(params.max_terminals, n));

  // Random labelling so terminals are not always the low ids.
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> terminal(static_cast<std::size_t>(n), 0);
  RawInstance raw;
  raw.vertex_count = n;
  for (int i = 0; i < k; ++i) {
    terminal[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    raw.terminals.push_back(order[static_cast<std::size_t>(i)]);
  }
  // Attachment order: one terminal first, then terminals and Steiner
  // vertices interleaved, so the spanning structure routes through Steiner
  // vertices instead of always containing a terminal-only tree.
  std::shuffle(order.begin() + 1, order.end(), rng);

  auto cost = [&] {
    const int num = draw(rng, 1, params.max_numerator);
    const int den = draw(rng, 1, params.max_denominator);
    Rational c(num, den);
    c.canonicalize();
    return c;
  };

  // Spanning structure: each later vertex attaches to an earlier terminal,
  // and each terminal beyond the first also attaches to any earlier vertex.
  for (int i = 1; i < n; ++i) {
    const VertexId v = order[static_cast<std::size_t>(i)];
    std::vector<VertexId> anchors;
    for (int j = 0; j < i; ++j) {
      const VertexId w = order[static_cast<std::size_t>(j)];
      if (terminal[static_cast<std::size_t>(v)] || terminal[static_cast<std::size_t>(w)]) anchors.push_back(w);
    }
    const VertexId w = anchors[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(anchors.size()) - 1))];
    Rational c = cost();
    raw.edges.push_back(Edge{v, w, c});
  }
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      const bool ta = terminal[static_cast<std::size_t>(a)] != 0;
      const bool tb = terminal[static_cast<std::size_t>(b)] != 0;
      if (!ta && !tb) continue;
      const double p = ta && tb ? params.terminal_edge_probability : params.steiner_edge_probability;
      if (coin(rng, p)) {
        Rational c = cost();
        raw.edges.push_back(Edge{a, b, c});
      }
    }
  }
  raw.root = raw.terminals[static_cast<std::size_t>(draw(rng, 0, k - 1))];
  return validate_instance(std::move(raw));
}

ArcVector random_minimal_point(const Instance& inst, const Digraph& dg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int parts = draw(rng, 2, 4);
  ArcVector x;
  for (int p = 0; p < parts; ++p) {
    const ArcVector tree = random_arborescence(inst, dg, rng);
    for (const auto& [a, value] : tree.entries()) x.add(a, value / parts);
  }
  return make_minimal(dg, std::move(x), Execution::serial);
}

}  // namespace qbst
