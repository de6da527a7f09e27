#include "qbst/sampler.hpp"

#include <algorithm>
#include <numeric>

#include "qbst/error.hpp"

namespace qbst {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Rational ln3_upper_bound() {
  // ln 3 = 1.098612288668109691395...
  return Rational(BigInt("10986122886681097"), BigInt("10000000000000000"));
}

SamplingPlan build_plan(const ArcVector& x, const Instance& inst, const Digraph& dg, std::uint64_t seed) {
  SamplingPlan plan;
  plan.seed = seed;
  plan.total_mass = 0;
  for (VertexId v : inst.steiner_vertices()) {
    const Rational mass = x.sum(dg.out_arcs(v));
    if (mass > 0) {
      plan.mass_per_centre.emplace(v, mass);
      plan.total_mass += mass;
    }
  }
  if (plan.total_mass == 0) {
    if (inst.terminals().size() <= 1) return plan;
    // Terminal-only support is legitimate: the tree uses terminal edges only.
    bool terminal_only = !x.empty();
    for (const auto& [a, value] : x.entries()) {
      if (!dg.is_terminal(dg.arc(a).tail) || !dg.is_terminal(dg.arc(a).head)) terminal_only = false;
    }
    if (!terminal_only) throw Error(ErrorCode::ZeroMass, "no arc weight on any Steiner vertex or terminal edge");
    return plan;
  }
  const Rational scaled = plan.total_mass * ln3_upper_bound();
  BigInt rounds = scaled.get_num() / scaled.get_den();
  if (rounds * scaled.get_den() != scaled.get_num()) rounds += 1;
  plan.rounds = rounds.get_si();
  return plan;
}

std::optional<std::vector<int>> induced_mst(const Instance& inst, const VertexSet& vertices) {
  std::vector<char> in(static_cast<std::size_t>(inst.vertex_count()), 0);
  for (VertexId v : vertices) in[static_cast<std::size_t>(v)] = 1;
  std::vector<int> order;
  const auto& edges = inst.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (in[static_cast<std::size_t>(edges[e].u)] && in[static_cast<std::size_t>(edges[e].v)]) {
      order.push_back(static_cast<int>(e));
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return edges[static_cast<std::size_t>(a)].cost < edges[static_cast<std::size_t>(b)].cost;
  });
  DisjointSets sets(inst.vertex_count());
  std::vector<int> tree;
  for (int e : order) {
    if (sets.unite(edges[static_cast<std::size_t>(e)].u, edges[static_cast<std::size_t>(e)].v)) tree.push_back(e);
  }
  if (!vertices.empty() && tree.size() + 1 != vertices.size()) return std::nullopt;
  std::sort(tree.begin(), tree.end());
  return tree;
}

SampledTree sample_tree(const SamplingPlan& plan, const Instance& inst, std::uint64_t trial) {
  // Exact categorical sampling: integer weights over the common denominator.
  BigInt common = 1;
  for (const auto& [v, mass] : plan.mass_per_centre) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), mass.get_den_mpz_t());
  std::vector<std::pair<VertexId, BigInt>> cumulative;
  BigInt running = 0;
  for (const auto& [v, mass] : plan.mass_per_centre) {
    running += mass.get_num() * (common / mass.get_den());
    cumulative.emplace_back(v, running);
  }

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(BigInt(std::to_string(splitmix64(plan.seed ^ splitmix64(trial)))));

  SampledTree out;
  for (int attempt = 0; attempt <= kSamplerRetryBudget; ++attempt) {
    out.sampled_vertices.clear();
    for (std::int64_t i = 0; i < plan.rounds && !cumulative.empty(); ++i) {
      const BigInt draw = rng.get_z_range(running);
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw,
                                 [](const BigInt& d, const auto& entry) { return d < entry.second; });
      out.sampled_vertices.push_back(it->first);
    }
    VertexSet vertices = inst.terminals();
    vertices.insert(vertices.end(), out.sampled_vertices.begin(), out.sampled_vertices.end());
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (auto tree = induced_mst(inst, vertices)) {
      out.tree_edges = std::move(*tree);
      out.cost = 0;
      for (int e : out.tree_edges) out.cost += inst.edges()[static_cast<std::size_t>(e)].cost;
      out.retries = attempt;
      return out;
    }
  }
  throw Error(ErrorCode::DisconnectedAfterRetries,
              "sampled vertex set stayed disconnected after " + std::to_string(kSamplerRetryBudget) +
                  " redraws");
}

std::vector<SampledTree> sample_trials(const SamplingPlan& plan, const Instance& inst, std::size_t count,
                                       Execution execution) {
  std::vector<SampledTree> out(count);
  for_each_index(execution, count, [&](std::size_t i) { out[i] = sample_tree(plan, inst, i); });
  return out;
}

bool verify_distribution(const ArcVector& x, const ComponentVector& y, const Digraph& dg) {
  std::map<VertexId, Rational> by_centre;
  for (const auto& [k, weight] : y.entries()) {
    if (k.centre) by_centre[*k.centre] += weight;
  }
  for (VertexId v = 0; v < dg.vertex_count(); ++v) {
    if (dg.is_terminal(v)) continue;
    const auto it = by_centre.find(v);
    const Rational from_y = it == by_centre.end() ? Rational(0) : it->second;
    if (from_y != x.sum(dg.out_arcs(v))) return false;
  }
  return true;
}

}  // namespace qbst
