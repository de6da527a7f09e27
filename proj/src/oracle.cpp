#include "qbst/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "qbst/error.hpp"
#include "qbst/simplex.hpp"

namespace qbst {

namespace {

std::vector<VertexId> non_root_terminals(const Digraph& dg) {
  std::vector<VertexId> out;
  for (VertexId t : dg.terminals()) {
    if (t != dg.root()) out.push_back(t);
  }
  return out;
}

// Membership mask over vertices for a subset (bitmask) of `terms`.
std::vector<char> terminal_subset(int vertex_count, const std::vector<VertexId>& terms,
                                  std::uint64_t bits) {
  std::vector<char> in(static_cast<std::size_t>(vertex_count), 0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if ((bits >> i) & 1U) in[static_cast<std::size_t>(terms[i])] = 1;
  }
  return in;
}

VertexSet subset_of(const std::vector<VertexId>& terms, std::uint64_t bits) {
  VertexSet out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if ((bits >> i) & 1U) out.push_back(terms[i]);
  }
  return out;
}

int crosses(const DirectedFullComponent& k, const std::vector<char>& in) {
  return component_crosses(k, in) ? 1 : 0;
}

}  // namespace

std::vector<DirectedFullComponent> enumerate_components(const Digraph& dg, int max_sources) {
  std::vector<DirectedFullComponent> out;
  for (const Arc& arc : dg.arcs()) {
    if (dg.is_terminal(arc.tail) && dg.is_terminal(arc.head)) {
      out.push_back(make_component(dg, std::nullopt, arc.head, VertexSet{arc.tail}));
    }
  }
  for (VertexId v = 0; v < dg.vertex_count(); ++v) {
    if (dg.is_terminal(v)) continue;
    const auto nbrs = dg.neighbours(v);
    const std::size_t d = nbrs.size();
    if (d < 2) continue;
    if (d > 30) throw Error(ErrorCode::TooLarge, "Steiner vertex degree too large to enumerate");
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << d); ++bits) {
      const int size = std::popcount(bits);
      if (size < 2) continue;
      if (max_sources >= 0 && size - 1 > max_sources) continue;
      const VertexSet members = subset_of(nbrs, bits);
      for (VertexId sink : members) {
        VertexSet sources;
        for (VertexId w : members) {
          if (w != sink) sources.push_back(w);
        }
        out.push_back(make_component(dg, v, sink, std::move(sources)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DcrSolution solve_dcr_bruteforce(const Digraph& dg, int max_sources) {
  if (static_cast<int>(dg.terminals().size()) > kDcrTerminalLimit) {
    throw Error(ErrorCode::TooLarge, "brute-force DCR limited to " +
                                         std::to_string(kDcrTerminalLimit) + " terminals");
  }
  const auto terms = non_root_terminals(dg);
  DcrSolution sol;
  sol.value = 0;
  if (terms.empty()) return sol;

  const auto components = enumerate_components(dg, max_sources);
  LinearProgram lp;
  lp.variable_count = static_cast<int>(components.size());
  for (const auto& k : components) lp.objective.push_back(k.cost);
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << terms.size()); ++bits) {
    const auto in = terminal_subset(dg.vertex_count(), terms, bits);
    LinearConstraint c;
    c.rhs = 1;
    for (std::size_t j = 0; j < components.size(); ++j) {
      if (component_crosses(components[j], in)) c.terms.emplace_back(static_cast<int>(j), Rational(1));
    }
    lp.constraints.push_back(std::move(c));
  }
  const LpSolution lp_sol = simplex_solve(lp);
  for (std::size_t j = 0; j < components.size(); ++j) {
    if (lp_sol.values[j] > 0) sol.y.add(components[j], lp_sol.values[j]);
  }
  sol.value = lp_sol.objective;
  return sol;
}

Rational solve_bcr_bruteforce(const Digraph& dg) {
  const int n = dg.vertex_count();
  if (n > 10) throw Error(ErrorCode::TooLarge, "brute-force BCR limited to 10 vertices");
  LinearProgram lp;
  lp.variable_count = dg.arc_count();
  for (const Arc& arc : dg.arcs()) lp.objective.push_back(arc.cost);
  VertexMask terminals = 0;
  for (VertexId t : dg.terminals()) terminals |= VertexMask{1} << t;
  const VertexMask root = VertexMask{1} << dg.root();
  for (VertexMask mask = 1; mask < (VertexMask{1} << n); ++mask) {
    if ((mask & root) || !(mask & terminals)) continue;
    LinearConstraint c;
    c.rhs = 1;
    for (ArcId a : cut_arcs(dg, mask_to_set(mask))) c.terms.emplace_back(a, Rational(1));
    lp.constraints.push_back(std::move(c));
  }
  if (lp.constraints.empty()) return 0;
  return simplex_solve(lp).objective;
}

FeasibilityReport check_feasible_dcr(const Digraph& dg, const ComponentVector& y) {
  if (static_cast<int>(dg.terminals().size()) > kFeasibilityTerminalLimit) {
    throw Error(ErrorCode::TooLarge, "exhaustive DCR feasibility limited to " +
                                         std::to_string(kFeasibilityTerminalLimit) + " terminals");
  }
  const auto terms = non_root_terminals(dg);
  // Sort subsets by size, then lexicographically, so the witness is small.
  std::vector<std::uint64_t> order;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << terms.size()); ++bits) order.push_back(bits);
  std::stable_sort(order.begin(), order.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::uint64_t bits : order) {
    const auto in = terminal_subset(dg.vertex_count(), terms, bits);
    if (y.crossing_weight(in) < 1) return FeasibilityReport{false, subset_of(terms, bits)};
  }
  return {};
}

Rational borchers_du_rho(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "rho_k needs k >= 2");
  int t = 0;
  while ((2LL << t) <= k) ++t;  // largest t with 2^t <= k
  const BigInt pow = BigInt(1) << t;
  const BigInt s = BigInt(k) - pow;
  Rational rho(BigInt(t + 1) * pow + s, BigInt(t) * pow + s);
  rho.canonicalize();
  return rho;
}

SubmodularityReport check_submodularity(const DirectedFullComponent& k,
                                        const std::vector<VertexId>& terminals, int vertex_count,
                                        std::int64_t trials, std::uint64_t seed) {
  if (terminals.size() > 63) throw Error(ErrorCode::TooLarge, "at most 63 terminals");
  std::mt19937_64 rng(seed);
  const std::uint64_t full = terminals.size() == 64 ? ~0ULL : (1ULL << terminals.size()) - 1;
  SubmodularityReport report;
  for (std::int64_t i = 0; i < trials; ++i) {
    const std::uint64_t u = rng() & full;
    const std::uint64_t w = rng() & full;
    const int lhs = crosses(k, terminal_subset(vertex_count, terminals, u)) +
                    crosses(k, terminal_subset(vertex_count, terminals, w));
    const int rhs = crosses(k, terminal_subset(vertex_count, terminals, u & w)) +
                    crosses(k, terminal_subset(vertex_count, terminals, u | w));
    ++report.checked;
    if (lhs < rhs) {
      report.holds = false;
      report.witness = std::pair(subset_of(terminals, u), subset_of(terminals, w));
      return report;
    }
  }
  return report;
}

SubmodularityReport check_submodularity_exhaustive(const DirectedFullComponent& k,
                                                   const std::vector<VertexId>& terminals,
                                                   int vertex_count) {
  if (terminals.size() > 10) throw Error(ErrorCode::TooLarge, "exhaustive check limited to 10 terminals");
  const std::uint64_t count = 1ULL << terminals.size();
  std::vector<int> value(count);
  for (std::uint64_t s = 0; s < count; ++s) value[s] = crosses(k, terminal_subset(vertex_count, terminals, s));
  SubmodularityReport report;
  for (std::uint64_t u = 0; u < count; ++u) {
    for (std::uint64_t w = 0; w < count; ++w) {
      ++report.checked;
      if (value[u] + value[w] < value[u & w] + value[u | w]) {
        report.holds = false;
        report.witness = std::pair(subset_of(terminals, u), subset_of(terminals, w));
        return report;
      }
    }
  }
  return report;
}

VertexSet mask_to_set(VertexMask mask) {
  VertexSet out;
  for (int v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1U) out.push_back(v);
  }
  return out;
}

VertexMask set_to_mask(const VertexSet& set) {
  VertexMask mask = 0;
  for (VertexId v : set) mask |= VertexMask{1} << v;
  return mask;
}

PointScan::PointScan(const PolyhedronPoint& pt, const Digraph& dg) {
  const int n = dg.vertex_count();
  if (n > kTightSetVertexLimit) {
    throw Error(ErrorCode::TooLarge, "tight-set enumeration limited to " +
                                         std::to_string(kTightSetVertexLimit) + " vertices");
  }
  for (VertexId t : dg.terminals()) terminal_mask_ |= VertexMask{1} << t;
  root_bit_ = VertexMask{1} << dg.root();

  struct WeightedArc {
    VertexMask tail;
    VertexMask head;
    Rational value;
  };
  std::vector<WeightedArc> arcs;
  for (const auto& [a, value] : pt.x.entries()) {
    arcs.push_back({VertexMask{1} << dg.arc(a).tail, VertexMask{1} << dg.arc(a).head, value});
  }
  struct WeightedComponent {
    VertexMask sink;
    VertexMask sources;
    Rational value;
  };
  std::vector<WeightedComponent> comps;
  for (const auto& [k, value] : pt.y.entries()) {
    comps.push_back({VertexMask{1} << k.sink, set_to_mask(k.sources), value});
  }

  Rational total;
  for (VertexMask mask = 1; mask < (VertexMask{1} << n); ++mask) {
    if (!is_valid(mask)) continue;
    total = 0;
    for (const auto& a : arcs) {
      if ((mask & a.tail) && !(mask & a.head)) total += a.value;
    }
    for (const auto& c : comps) {
      if (!(mask & c.sink) && (mask & c.sources)) total += c.value;
    }
    const int cmp_one = cmp(total, 1);
    if (cmp_one == 0) {
      tight_.push_back(mask);
    } else if (cmp_one < 0 && !first_violated_) {
      first_violated_ = mask;
    }
  }
}

bool PointScan::is_valid(VertexMask mask) const {
  return (mask & terminal_mask_) != 0 && (mask & root_bit_) == 0;
}

bool PointScan::is_tight(VertexMask mask) const {
  return std::binary_search(tight_.begin(), tight_.end(), mask);
}

BruteFamilies brute_force_families(const PointScan& scan, const PolyhedronPoint& pt,
                                   const Digraph& dg, VertexId centre, VertexId sink) {
  const VertexMask vbit = VertexMask{1} << centre;
  const VertexMask ubit = VertexMask{1} << sink;
  BruteFamilies fam;
  for (VertexId w : dg.neighbours(centre)) {
    if (w == sink) continue;
    const auto a = dg.find_arc(w, centre);
    if (!a || pt.x.get(*a) <= 0) continue;
    const VertexMask wbit = VertexMask{1} << w;
    const bool blocked = std::any_of(scan.tight().begin(), scan.tight().end(), [&](VertexMask u) {
      return (u & ubit) && (u & wbit) && !(u & vbit);
    });
    if (!blocked) fam.eligible.push_back(w);
  }
  const VertexMask cmask = set_to_mask(fam.eligible);
  std::vector<VertexMask> xs;
  std::vector<VertexMask> ys;
  for (VertexMask u : scan.tight()) {
    if (!(u & ubit) && !(u & vbit) && (u & cmask)) xs.push_back(u & cmask);
    if ((u & vbit) && !(u & ubit)) ys.push_back(u & cmask);
  }
  auto normalize = [](std::vector<VertexMask>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(xs);
  normalize(ys);
  for (VertexMask a : xs) {
    fam.x_family.push_back(mask_to_set(a));
    const bool dominated = std::any_of(xs.begin(), xs.end(), [&](VertexMask b) {
      return b != a && (a & b) == a;
    });
    if (!dominated) fam.maximal_x.push_back(mask_to_set(a));
  }
  for (VertexMask a : ys) {
    fam.y_family.push_back(mask_to_set(a));
    const bool dominated = std::any_of(ys.begin(), ys.end(), [&](VertexMask b) {
      return b != a && (a & b) == b;
    });
    if (!dominated) fam.minimal_y.push_back(mask_to_set(a));
  }
  std::sort(fam.maximal_x.begin(), fam.maximal_x.end());
  std::sort(fam.minimal_y.begin(), fam.minimal_y.end());
  return fam;
}

std::string check_feasibility_conditions(const DirectedFullComponent& k, const BruteFamilies& fam,
                                         const PointScan& scan, const PolyhedronPoint& pt,
                                         const Digraph& dg) {
  for (ArcId a : k.arcs) {
    if (pt.x.get(a) <= 0) return "(a) arc " + std::to_string(a) + " has zero weight";
  }
  for (VertexId w : k.sources) {
    if (!std::binary_search(fam.eligible.begin(), fam.eligible.end(), w)) {
      return "(b) source " + std::to_string(w) + " not eligible";
    }
  }
  const VertexMask sources = set_to_mask(k.sources);
  for (const VertexSet& x : fam.x_family) {
    if (std::popcount(sources & set_to_mask(x)) > 1) return "(c) two sources in one X set";
  }
  for (const VertexSet& y : fam.y_family) {
    if ((sources & set_to_mask(y)) == 0) return "(d) a Y set holds no source";
  }
  for (VertexMask u : scan.tight()) {
    const VertexSet set = mask_to_set(u);
    const auto in = membership(dg.vertex_count(), set);
    const auto leaving = cut_arcs(dg, set);
    int arcs_leaving = 0;
    for (ArcId a : k.arcs) {
      if (std::binary_search(leaving.begin(), leaving.end(), a)) ++arcs_leaving;
    }
    if ((component_crosses(k, in) ? 1 : 0) < arcs_leaving) {
      return "tight set crossed by more arcs of K than K itself";
    }
  }
  return {};
}

std::int64_t check_uncrossing(const PointScan& scan, std::int64_t& violations) {
  const auto& tight = scan.tight();
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < tight.size(); ++i) {
    for (std::size_t j = i + 1; j < tight.size(); ++j) {
      const VertexMask meet = tight[i] & tight[j];
      if (!scan.is_valid(meet)) continue;  // no common terminal
      ++pairs;
      if (!scan.is_tight(meet) || !scan.is_tight(tight[i] | tight[j])) ++violations;
    }
  }
  return pairs;
}

void OracleAuditor::operator()(const StepRecord& record) {
  const Digraph& dg = *dg_;
  ++steps;
  const PointScan before(*record.before, dg);
  const FeasibilityFamilies& fam = *record.families;
  const BruteFamilies brute = brute_force_families(before, *record.before, dg, fam.centre, fam.sink);

  auto sorted = [](std::vector<VertexSet> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (brute.eligible != fam.eligible || brute.maximal_x != sorted(fam.maximal_x) ||
      brute.minimal_y != sorted(fam.minimal_y)) {
    ++family_mismatches;
    messages.push_back("step " + std::to_string(record.index) + ": families differ from brute force");
  }
  const std::string why =
      check_feasibility_conditions(record.step->component, brute, before, *record.before, dg);
  if (!why.empty()) {
    ++condition_failures;
    messages.push_back("step " + std::to_string(record.index) + ": " + why);
  }

  const PointScan after(*record.after, dg);
  if (!after.feasible()) {
    ++membership_failures;
    messages.push_back("step " + std::to_string(record.index) + ": point left the polyhedron");
  }
  for (VertexMask u : before.tight()) {
    if (!after.is_tight(u)) {
      ++tightness_lost;
      messages.push_back("step " + std::to_string(record.index) + ": tight set lost tightness");
      break;
    }
  }
  uncrossing_pairs += check_uncrossing(before, uncrossing_violations);
}

}  // namespace qbst
