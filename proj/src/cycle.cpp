#include "pedigree/cycle.hpp"

#include <algorithm>

#include "pedigree/errors.hpp"

namespace pedigree {

EvolvingCycle::EvolvingCycle()
    : next_{0, 2, 3, 1},
      prev_{0, 3, 1, 2},
      nu_{NuRecord{}, NuRecord{}, NuRecord{1, 1}, NuRecord{2, 1}},
      inserted_minus_(4, 0),
      inserted_plus_(4, 0) {}

std::size_t EvolvingCycle::index(Node v) const {
  if (v < 1 || v > n_) {
    throw DomainError("node " + std::to_string(v) + " is not in the cycle on [" + std::to_string(n_) + "]");
  }
  return static_cast<std::size_t>(v);
}

NodePair EvolvingCycle::nu_pair(Node k) const {
  if (k < 3) throw DomainError("nu(" + std::to_string(k) + ") is not a pair");
  auto r = nu(k);
  return NodePair(r.minus, r.plus);
}

bool EvolvingCycle::has_edge(NodePair e) const noexcept {
  if (e.hi() > n_) return false;
  const auto lo = static_cast<std::size_t>(e.lo());
  return next_[lo] == e.hi() || prev_[lo] == e.hi();
}

std::optional<Node> EvolvingCycle::inserter_of(NodePair e) const noexcept {
  if (e.hi() > n_) return std::nullopt;
  const auto j = static_cast<std::size_t>(e.hi());
  Node m = 0;
  if (nu_[j].minus == e.lo()) {
    m = inserted_minus_[j];
  } else if (nu_[j].plus == e.lo()) {
    m = inserted_plus_[j];
  }
  if (m == 0) return std::nullopt;
  return m;
}

std::vector<Node> EvolvingCycle::order() const {
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(n_));
  Node v = 1;
  for (int i = 0; i < n_; ++i) {
    out.push_back(v);
    v = next_[static_cast<std::size_t>(v)];
  }
  return out;
}

std::vector<NodePair> EvolvingCycle::edges() const {
  std::vector<NodePair> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (Node v : order()) out.push_back(edge_from(v));
  return out;
}

int EvolvingCycle::edge_index(NodePair e) const {
  if (!has_edge(e)) throw DomainError("{" + e.str() + "} is not an edge of the cycle");
  const Node tail = next_[static_cast<std::size_t>(e.lo())] == e.hi() ? e.lo() : e.hi();
  Node v = 1;
  for (int k = 1; k <= n_; ++k) {
    if (v == tail) return k;
    v = next_[static_cast<std::size_t>(v)];
  }
  throw InvariantViolation("ring is broken");
}

void EvolvingCycle::insert(NodePair e) {
  Node tail = 0;
  Node head = 0;
  if (e.hi() <= n_ && next_[static_cast<std::size_t>(e.lo())] == e.hi()) {
    tail = e.lo();
    head = e.hi();
  } else if (e.hi() <= n_ && next_[static_cast<std::size_t>(e.hi())] == e.lo()) {
    tail = e.hi();
    head = e.lo();
  } else {
    throw DomainError("cannot insert into {" + e.str() + "}: not an edge of the cycle on [" +
                      std::to_string(n_) + "]");
  }
  const Node m = ++n_;
  next_.push_back(head);
  prev_.push_back(tail);
  next_[static_cast<std::size_t>(tail)] = m;
  prev_[static_cast<std::size_t>(head)] = m;
  nu_.push_back(NuRecord{tail, head});
  inserted_minus_.push_back(0);
  inserted_plus_.push_back(0);

  const auto j = static_cast<std::size_t>(e.hi());
  if (nu_[j].minus == e.lo()) {
    inserted_minus_[j] = m;
  } else if (nu_[j].plus == e.lo()) {
    inserted_plus_[j] = m;
  } else {
    throw InvariantViolation("edge {" + e.str() + "} exists but " + std::to_string(e.lo()) +
                             " is not an insertion neighbour of " + std::to_string(e.hi()));
  }
}

EvolvingCycle EvolvingCycle::prefix(int m) const {
  if (m < 3 || m > n_) throw DomainError("prefix size " + std::to_string(m) + " out of range");
  EvolvingCycle out;
  out.n_ = m;
  const auto size = static_cast<std::size_t>(m) + 1;
  out.next_.assign(size, 0);
  out.prev_.assign(size, 0);
  out.nu_.assign(nu_.begin(), nu_.begin() + static_cast<std::ptrdiff_t>(size));
  out.inserted_minus_.assign(size, 0);
  out.inserted_plus_.assign(size, 0);
  std::vector<Node> kept;
  kept.reserve(size);
  for (Node v : order()) {
    if (v <= m) kept.push_back(v);
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Node a = kept[i];
    const Node b = kept[(i + 1) % kept.size()];
    out.next_[static_cast<std::size_t>(a)] = b;
    out.prev_[static_cast<std::size_t>(b)] = a;
  }
  for (std::size_t j = 1; j < size; ++j) {
    if (inserted_minus_[j] <= m) out.inserted_minus_[j] = inserted_minus_[j];
    if (inserted_plus_[j] <= m) out.inserted_plus_[j] = inserted_plus_[j];
  }
  return out;
}

// ---------------------------------------------------------------------------

EvolvingCycle base_cycle() { return EvolvingCycle(); }

NodePair kth_edge(const EvolvingCycle& c, int k) {
  if (k < 1 || k > c.size()) {
    throw DomainError("edge index " + std::to_string(k) + " outside [1, " + std::to_string(c.size()) + "]");
  }
  Node v = 1;
  for (int i = 1; i < k; ++i) v = c.next(v);
  return c.edge_from(v);
}

EvolvingCycle insert_node(const EvolvingCycle& c, int edge_index) {
  EvolvingCycle out = c;
  out.insert(kth_edge(c, edge_index));
  return out;
}

NuRecord nu_by_walk(const EvolvingCycle& c, Node k) {
  if (k < 2 || k > c.size()) throw DomainError("nu walk needs 2 <= k <= n, got " + std::to_string(k));
  NuRecord r;
  Node v = c.next(k);
  while (v > k) v = c.next(v);
  r.plus = v;
  v = c.prev(k);
  while (v > k) v = c.prev(v);
  r.minus = v;
  return r;
}

std::vector<Node> segment_between(const EvolvingCycle& c, Node i, Node j) {
  if (i == j) throw DomainError("segment needs two distinct nodes");
  if (i < 1 || j < 1 || i > c.size() || j > c.size()) throw DomainError("segment endpoint outside the cycle");
  Node avoid = 1;
  while (avoid == i || avoid == j) ++avoid;

  auto arc = [&](Node from, Node to) {
    std::vector<Node> out;
    for (Node v = c.next(from); v != to; v = c.next(v)) out.push_back(v);
    return out;
  };
  auto seg = arc(i, j);
  if (std::find(seg.begin(), seg.end(), avoid) != seg.end()) seg = arc(j, i);
  return seg;
}

std::optional<Node> find_inserter(const EvolvingCycle& c, NodePair pair) {
  auto seg = segment_between(c, pair.lo(), pair.hi());
  if (seg.empty()) return std::nullopt;
  const Node smallest = *std::min_element(seg.begin(), seg.end());
  if (smallest > pair.hi()) return smallest;
  return std::nullopt;
}

EvolvingCycle cycle_from_pedigree(const Pedigree& p) {
  EvolvingCycle c;
  for (int k = 3; k <= p.n() - 1; ++k) c.insert(kth_edge(c, p.choice(k)));
  return c;
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t pos) {
    for (++pos; pos < tree_.size(); pos += pos & (~pos + 1)) ++tree_[pos];
  }
  // number of marked positions < pos
  int count_below(std::size_t pos) const {
    int s = 0;
    for (; pos > 0; pos -= pos & (~pos + 1)) s += tree_[pos];
    return s;
  }

 private:
  std::vector<int> tree_;
};

}  // namespace

Pedigree pedigree_from_cycle(const EvolvingCycle& c) {
  const int n = c.size();
  const auto size = static_cast<std::size_t>(n) + 1;
  const auto ord = c.order();
  std::vector<std::size_t> pos(size);
  for (std::size_t i = 0; i < ord.size(); ++i) pos[static_cast<std::size_t>(ord[i])] = i;

  // peel n, n-1, ..., 4 off a private copy of the ring
  std::vector<Node> next(size), prev(size), minus(size, 0);
  for (Node v = 1; v <= n; ++v) {
    next[static_cast<std::size_t>(v)] = c.next(v);
    prev[static_cast<std::size_t>(v)] = c.prev(v);
  }
  for (Node k = n; k >= 4; --k) {
    const auto kk = static_cast<std::size_t>(k);
    const Node before = prev[kk];
    const Node after = next[kk];
    minus[kk] = before;
    next[static_cast<std::size_t>(before)] = after;
    prev[static_cast<std::size_t>(after)] = before;
  }

  Fenwick present(static_cast<std::size_t>(n));
  for (Node v = 1; v <= 3; ++v) present.add(pos[static_cast<std::size_t>(v)]);
  std::vector<int> choices;
  choices.reserve(static_cast<std::size_t>(n > 3 ? n - 3 : 0));
  for (Node k = 4; k <= n; ++k) {
    const auto tail_pos = pos[static_cast<std::size_t>(minus[static_cast<std::size_t>(k)])];
    choices.push_back(1 + present.count_below(tail_pos));
    present.add(pos[static_cast<std::size_t>(k)]);
  }
  return Pedigree(n, std::move(choices));
}

Pedigree pedigree_from_pairs(int n, const std::vector<NodePair>& pairs) {
  check_city_count(n);
  if (pairs.size() != static_cast<std::size_t>(n - 3)) {
    throw DomainError("pair form for n=" + std::to_string(n) + " needs " + std::to_string(n - 3) +
                      " pairs, got " + std::to_string(pairs.size()));
  }
  EvolvingCycle c;
  std::vector<int> choices;
  for (const auto& e : pairs) {
    if (!c.has_edge(e)) {
      throw DomainError("{" + e.str() + "} is not an edge of the cycle on [" + std::to_string(c.size()) +
                        "], cannot insert node " + std::to_string(c.size() + 1));
    }
    choices.push_back(c.edge_index(e));
    c.insert(e);
  }
  return Pedigree(n, std::move(choices));
}

std::vector<NodePair> insertion_pairs(const EvolvingCycle& c) {
  std::vector<NodePair> out;
  for (Node k = 4; k <= c.size(); ++k) out.push_back(c.nu_pair(k));
  return out;
}

}  // namespace pedigree
