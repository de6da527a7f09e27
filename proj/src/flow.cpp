#include "qbst/flow.hpp"

#include <deque>
#include <string>

#include "qbst/error.hpp"

namespace qbst {

Capacity::Capacity(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw Error(ErrorCode::InvalidArgument, "negative capacity");
}

Capacity Capacity::infinite() {
  Capacity c;
  c.infinite_ = true;
  return c;
}

Capacity operator+(const Capacity& a, const Capacity& b) {
  if (a.infinite_ || b.infinite_) return Capacity::infinite();
  return Capacity(a.value_ + b.value_);
}

bool operator==(const Capacity& a, const Capacity& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Capacity& a, const Capacity& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const Capacity& c) { return c.is_infinite() ? "inf" : to_string(c.value()); }

FlowNetwork::FlowNetwork(int node_count, int source, int sink)
    : node_count_(node_count), source_(source), sink_(sink) {}

int FlowNetwork::add_node() { return node_count_++; }

int FlowNetwork::add_arc(int tail, int head, Capacity capacity) {
  if (tail < 0 || tail >= node_count_ || head < 0 || head >= node_count_) {
    throw Error(ErrorCode::InvalidArgument, "flow arc endpoint out of range");
  }
  arcs_.push_back(FlowArc{tail, head, std::move(capacity)});
  return static_cast<int>(arcs_.size()) - 1;
}

namespace {

// Residual edge 2i is arc i forward, 2i+1 is its reverse.
class Residual {
 public:
  explicit Residual(const FlowNetwork& net)
      : net_(net), flow_(net.arcs().size(), Rational(0)),
        adjacency_(static_cast<std::size_t>(net.node_count())) {
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
      const FlowArc& a = net.arcs()[i];
      if (a.tail == a.head) continue;
      adjacency_[static_cast<std::size_t>(a.tail)].push_back(static_cast<int>(2 * i));
      adjacency_[static_cast<std::size_t>(a.head)].push_back(static_cast<int>(2 * i + 1));
    }
  }

  int from(int e) const { return e % 2 == 0 ? arc(e).tail : arc(e).head; }
  int to(int e) const { return e % 2 == 0 ? arc(e).head : arc(e).tail; }

  bool has_residual(int e) const {
    const auto i = static_cast<std::size_t>(e / 2);
    if (e % 2 == 1) return flow_[i] > 0;
    const Capacity& cap = net_.arcs()[i].capacity;
    return cap.is_infinite() || flow_[i] < cap.value();
  }

  // Residual amount; infinite only for an unsaturable forward arc.
  Capacity residual(int e) const {
    const auto i = static_cast<std::size_t>(e / 2);
    if (e % 2 == 1) return Capacity(flow_[i]);
    const Capacity& cap = net_.arcs()[i].capacity;
    if (cap.is_infinite()) return Capacity::infinite();
    return Capacity(cap.value() - flow_[i]);
  }

  void push(int e, const Rational& amount) {
    const auto i = static_cast<std::size_t>(e / 2);
    if (e % 2 == 0) {
      flow_[i] += amount;
    } else {
      flow_[i] -= amount;
    }
  }

  const std::vector<int>& out(int node) const { return adjacency_[static_cast<std::size_t>(node)]; }
  std::vector<Rational>& flow() { return flow_; }

  // Breadth-first search over residual edges; returns the predecessor edge
  // per node (-1 = unreached, -2 = start).
  std::vector<int> bfs(int start) const {
    std::vector<int> pred(static_cast<std::size_t>(net_.node_count()), -1);
    pred[static_cast<std::size_t>(start)] = -2;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int e : out(u)) {
        const int w = to(e);
        if (pred[static_cast<std::size_t>(w)] != -1 || !has_residual(e)) continue;
        pred[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
    return pred;
  }

  // Nodes that can reach `target` through residual edges.
  std::vector<char> reaches(int target) const {
    std::vector<std::vector<int>> incoming(static_cast<std::size_t>(net_.node_count()));
    for (int u = 0; u < net_.node_count(); ++u) {
      for (int e : out(u)) incoming[static_cast<std::size_t>(to(e))].push_back(e);
    }
    std::vector<char> seen(static_cast<std::size_t>(net_.node_count()), 0);
    seen[static_cast<std::size_t>(target)] = 1;
    std::deque<int> queue{target};
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop_front();
      for (int e : incoming[static_cast<std::size_t>(w)]) {
        const int u = from(e);
        if (seen[static_cast<std::size_t>(u)] || !has_residual(e)) continue;
        seen[static_cast<std::size_t>(u)] = 1;
        queue.push_back(u);
      }
    }
    return seen;
  }

 private:
  const FlowArc& arc(int e) const { return net_.arcs()[static_cast<std::size_t>(e / 2)]; }

  const FlowNetwork& net_;
  std::vector<Rational> flow_;
  std::vector<std::vector<int>> adjacency_;
};

bool infinite_path_exists(const FlowNetwork& net) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.node_count()));
  for (const FlowArc& a : net.arcs()) {
    if (a.capacity.is_infinite()) adj[static_cast<std::size_t>(a.tail)].push_back(a.head);
  }
  std::vector<char> seen(static_cast<std::size_t>(net.node_count()), 0);
  std::deque<int> queue{net.source()};
  seen[static_cast<std::size_t>(net.source())] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == net.sink()) return true;
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

void check_terminals(const FlowNetwork& net) {
  const int n = net.node_count();
  if (net.source() < 0 || net.source() >= n || net.sink() < 0 || net.sink() >= n) {
    throw Error(ErrorCode::InvalidArgument, "flow source/sink out of range");
  }
  if (net.source() == net.sink()) throw Error(ErrorCode::InvalidArgument, "source equals sink");
}

// Saturates the residual network; returns false if the value is infinite.
bool saturate(const FlowNetwork& net, Residual& residual, Rational& value) {
  if (infinite_path_exists(net)) return false;
  const int s = net.source();
  const int t = net.sink();
  value = 0;
  for (;;) {
    const auto pred = residual.bfs(s);
    if (pred[static_cast<std::size_t>(t)] == -1) break;
    Capacity bottleneck = Capacity::infinite();
    for (int v = t; v != s;) {
      const int e = pred[static_cast<std::size_t>(v)];
      Capacity r = residual.residual(e);
      if (r < bottleneck) bottleneck = r;
      v = residual.from(e);
    }
    // An all-infinite path was excluded above.
    const Rational amount = bottleneck.value();
    for (int v = t; v != s;) {
      const int e = pred[static_cast<std::size_t>(v)];
      residual.push(e, amount);
      v = residual.from(e);
    }
    value += amount;
  }
  return true;
}

std::vector<int> collect(const std::vector<char>& mask, bool want) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if ((mask[i] != 0) == want) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
  check_terminals(net);
  Residual residual(net);
  Rational value;
  if (!saturate(net, residual, value)) {
    return MaxFlowResult{Capacity::infinite(), residual.flow()};
  }
  return MaxFlowResult{Capacity(value), std::move(residual.flow())};
}

MinCuts min_cuts(const FlowNetwork& net) {
  check_terminals(net);
  Residual residual(net);
  Rational value;
  if (!saturate(net, residual, value)) return MinCuts{Capacity::infinite(), {}, {}};
  MinCuts cuts;
  cuts.value = Capacity(value);
  const auto pred = residual.bfs(net.source());
  std::vector<char> reached(pred.size(), 0);
  for (std::size_t i = 0; i < pred.size(); ++i) reached[i] = pred[i] != -1;
  cuts.minimal = collect(reached, true);
  cuts.maximal = collect(residual.reaches(net.sink()), false);
  return cuts;
}

CutResult min_cut_minimal(const FlowNetwork& net) {
  MinCuts cuts = min_cuts(net);
  if (cuts.value.is_infinite()) throw Error(ErrorCode::NoFiniteCut, "no finite s-t cut");
  return CutResult{cuts.value, std::move(cuts.minimal)};
}

CutResult min_cut_maximal(const FlowNetwork& net) {
  MinCuts cuts = min_cuts(net);
  if (cuts.value.is_infinite()) throw Error(ErrorCode::NoFiniteCut, "no finite s-t cut");
  return CutResult{cuts.value, std::move(cuts.maximal)};
}

Capacity cut_capacity(const FlowNetwork& net, const std::vector<int>& source_side) {
  std::vector<char> in(static_cast<std::size_t>(net.node_count()), 0);
  for (int v : source_side) in[static_cast<std::size_t>(v)] = 1;
  Capacity total;
  for (const FlowArc& a : net.arcs()) {
    if (in[static_cast<std::size_t>(a.tail)] && !in[static_cast<std::size_t>(a.head)]) {
      total = total + a.capacity;
    }
  }
  return total;
}

}  // namespace qbst
