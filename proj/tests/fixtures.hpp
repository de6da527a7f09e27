#pragma once

#include <string>
#include <vector>

#include "qbst/model.hpp"

namespace qbst::test {

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Instance make_instance(int n, std::vector<Edge> edges, std::vector<VertexId> terminals,
                              VertexId root) {
  RawInstance raw;
  raw.vertex_count = n;
  raw.edges = std::move(edges);
  raw.terminals = std::move(terminals);
  raw.root = root;
  return validate_instance(std::move(raw));
}

// r=0, v=1 (Steiner), a=2; edges r-v, v-a cost 1.
inline Instance path_instance() {
  return make_instance(3, {{0, 1, q(1)}, {1, 2, q(1)}}, {0, 2}, 0);
}

// r=0, a=1, b=2 around Steiner v=3; unit costs.
inline Instance star_instance() {
  return make_instance(4, {{0, 3, q(1)}, {1, 3, q(1)}, {2, 3, q(1)}}, {0, 1, 2}, 0);
}

inline ArcId arc(const Digraph& dg, VertexId tail, VertexId head) { return *dg.find_arc(tail, head); }

inline const char* kStarStp = R"(33D32945 STP File, STP Format Version 1.0

SECTION Comment
Name "star"
END

SECTION Graph
Nodes 4
Edges 3
E 1 4 1
E 2 4 1
E 3 4 1
END

SECTION Terminals
Terminals 3
T 1
T 2
T 3
END

EOF
)";

}  // namespace qbst::test
