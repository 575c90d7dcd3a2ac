#include "pedigree/pedigree_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pedigree/errors.hpp"

namespace pedigree {

std::string_view tag_name(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::kT1AB: return "T1-AB";
    case EdgeTag::kT1BA: return "T1-BA";
    case EdgeTag::kT2AB: return "T2-AB";
    case EdgeTag::kT2BA: return "T2-BA";
  }
  return "?";
}

EdgeTag parse_tag(std::string_view name) {
  for (auto tag : {EdgeTag::kT1AB, EdgeTag::kT1BA, EdgeTag::kT2AB, EdgeTag::kT2BA}) {
    if (tag_name(tag) == name) return tag;
  }
  throw DomainError("unknown edge tag '" + std::string(name) + "'");
}

std::vector<TypedEdge> PastEdges::list() const {
  std::vector<TypedEdge> out;
  if (ab) out.push_back(*ab);
  if (ba) out.push_back(*ba);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_vertex(const EvolvingCycle& a, const EvolvingCycle& b, Node m) {
  if (m < 4) return false;
  if (m > a.size() || m > b.size()) throw DomainError("node " + std::to_string(m) + " not yet created");
  return a.nu_pair(m) != b.nu_pair(m);
}

namespace {

std::string instance(Node m, NodePair nu_a, NodePair nu_b) {
  return " (m=" + std::to_string(m) + ", nu_A(m)={" + nu_a.str() + "}, nu_B(m)={" + nu_b.str() + "})";
}

// One direction of the edge rules. `mine` is the history of the cycle whose
// insertion pair is `pair`; `other` is looked up.
std::optional<TypedEdge> direction_edge(const EvolvingCycle& mine, const EvolvingCycle& other, Node m,
                                        NodePair pair, EdgeTag type1, EdgeTag type2) {
  std::optional<Node> t1 = other.inserter_of(pair);
  if (t1 && *t1 >= m) t1.reset();
  const Node ell = pair.hi();
  const bool t2 = !other.nu(ell).contains(pair.lo());

  if (t1 && t2) {
    throw InvariantViolation(std::string("type-1 and type-2 edges both fire for ") +
                             std::string(tag_name(type1)).substr(3) + " at m=" + std::to_string(m));
  }
  std::optional<TypedEdge> edge;
  if (t1) edge = TypedEdge{*t1, m, type1};
  if (t2) edge = TypedEdge{ell, m, type2};
  if (edge) {
    const Node t = edge->lo;
    if (t < 4 || mine.nu_pair(t) == other.nu_pair(t)) {
      throw InvariantViolation("edge " + std::string(tag_name(edge->tag)) + " from " + std::to_string(m) +
                               " targets non-vertex " + std::to_string(t));
    }
  }
  return edge;
}

}  // namespace

PastEdges derive_past_edges(const EvolvingCycle& a, const EvolvingCycle& b, Node m, NodePair nu_a,
                            NodePair nu_b) {
  if (nu_a == nu_b) throw DomainError("node " + std::to_string(m) + " is not a vertex" + instance(m, nu_a, nu_b));
  PastEdges out;
  out.ab = direction_edge(a, b, m, nu_a, EdgeTag::kT1AB, EdgeTag::kT2AB);
  out.ba = direction_edge(b, a, m, nu_b, EdgeTag::kT1BA, EdgeTag::kT2BA);
  return out;
}

PastEdges past_edges(const EvolvingCycle& a, const EvolvingCycle& b, Node m) {
  if (!is_vertex(a, b, m)) throw DomainError("node " + std::to_string(m) + " is not a vertex");
  return derive_past_edges(a, b, m, a.nu_pair(m), b.nu_pair(m));
}

// --- PedigreeGraph ---------------------------------------------------------

bool PedigreeGraph::has_vertex(Node v) const noexcept {
  return v >= 1 && v <= time_ && vertex_[static_cast<std::size_t>(v)] != 0;
}

std::vector<Node> PedigreeGraph::vertices() const {
  std::vector<Node> out;
  for (Node v = 4; v <= time_; ++v) {
    if (vertex_[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

Node PedigreeGraph::find(Node v) {
  auto i = static_cast<std::size_t>(v);
  while (parent_[i] != static_cast<Node>(i)) {
    parent_[i] = parent_[static_cast<std::size_t>(parent_[i])];
    i = static_cast<std::size_t>(parent_[i]);
  }
  return static_cast<Node>(i);
}

Node PedigreeGraph::find_const(Node v) const {
  auto i = static_cast<std::size_t>(v);
  while (parent_[i] != static_cast<Node>(i)) i = static_cast<std::size_t>(parent_[i]);
  return static_cast<Node>(i);
}

Node PedigreeGraph::component_root(Node v) const {
  if (!has_vertex(v)) throw DomainError(std::to_string(v) + " is not a vertex of the pedigree graph");
  return find_const(v);
}

Node PedigreeGraph::component_max(Node v) const {
  return max_[static_cast<std::size_t>(component_root(v))];
}

std::vector<std::vector<Node>> PedigreeGraph::components() const {
  std::map<Node, std::vector<Node>> by_root;
  for (Node v : vertices()) by_root[find_const(v)].push_back(v);
  std::vector<std::vector<Node>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

int PedigreeGraph::simple_degree(Node v) const {
  if (!has_vertex(v)) throw DomainError(std::to_string(v) + " is not a vertex of the pedigree graph");
  return degree_[static_cast<std::size_t>(v)];
}

int PedigreeGraph::typed_past_degree(Node v, bool ab_direction) const {
  if (!has_vertex(v)) throw DomainError(std::to_string(v) + " is not a vertex of the pedigree graph");
  return ab_direction ? past_ab_[static_cast<std::size_t>(v)] : past_ba_[static_cast<std::size_t>(v)];
}

int PedigreeGraph::max_typed_past_degree() const {
  int best = 0;
  for (std::size_t v = 4; v < vertex_.size(); ++v) {
    if (vertex_[v]) best = std::max(best, past_ab_[v] + past_ba_[v]);
  }
  return best;
}

void PedigreeGraph::grow(Node m) {
  const auto size = static_cast<std::size_t>(m) + 1;
  vertex_.resize(size, 0);
  parent_.resize(size, 0);
  size_.resize(size, 0);
  max_.resize(size, 0);
  degree_.resize(size, 0);
  past_ab_.resize(size, 0);
  past_ba_.resize(size, 0);
}

void PedigreeGraph::advance(Node m, bool vertex, const PastEdges& edges) {
  if (m != time_ + 1) {
    throw DomainError("pedigree graph is at time " + std::to_string(time_) + ", cannot add time " +
                      std::to_string(m));
  }
  if (!vertex && edges.count() > 0) throw InvariantViolation("edges at a non-vertex time " + std::to_string(m));
  grow(m);
  time_ = m;
  if (!vertex) return;

  const auto mi = static_cast<std::size_t>(m);
  vertex_[mi] = 1;
  ++vertex_count_;
  parent_[mi] = m;
  size_[mi] = 1;
  max_[mi] = m;
  ++components_;
  roots_.push_back(m);
  past_ab_[mi] = edges.ab ? 1 : 0;
  past_ba_[mi] = edges.ba ? 1 : 0;

  std::optional<Node> last_target;
  for (const auto& e : edges.list()) {
    if (e.hi != m || !has_vertex(e.lo)) {
      throw InvariantViolation("malformed past edge " + std::to_string(e.lo) + "-" + std::to_string(e.hi) +
                               " at time " + std::to_string(m));
    }
    edges_.push_back(e);
    if (last_target == e.lo) continue;  // parallel edge, same neighbour
    last_target = e.lo;
    const auto ti = static_cast<std::size_t>(e.lo);
    ++degree_[ti];
    ++degree_[mi];
    max_degree_ = std::max({max_degree_, int{degree_[ti]}, int{degree_[mi]}});
    if (degree_[ti] > 6) {
      throw InvariantViolation("vertex " + std::to_string(e.lo) + " reached simple degree " +
                               std::to_string(degree_[ti]) + " at time " + std::to_string(m));
    }

    Node rx = find(m);
    Node ry = find(e.lo);
    if (rx == ry) continue;
    if (size_[static_cast<std::size_t>(rx)] < size_[static_cast<std::size_t>(ry)]) std::swap(rx, ry);
    parent_[static_cast<std::size_t>(ry)] = rx;
    size_[static_cast<std::size_t>(rx)] += size_[static_cast<std::size_t>(ry)];
    max_[static_cast<std::size_t>(rx)] = std::max(max_[static_cast<std::size_t>(rx)], max_[static_cast<std::size_t>(ry)]);
    --components_;
    roots_.erase(std::find(roots_.begin(), roots_.end(), ry));
  }
}

PedigreeGraph PedigreeGraph::restricted(int m) const {
  if (m < 3 || m > time_) throw DomainError("cannot restrict to time " + std::to_string(m));
  PedigreeGraph out;
  auto it = edges_.begin();
  for (Node t = 4; t <= m; ++t) {
    PastEdges pe;
    for (; it != edges_.end() && it->hi == t; ++it) {
      (is_ab(it->tag) ? pe.ab : pe.ba) = *it;
    }
    out.advance(t, vertex_[static_cast<std::size_t>(t)] != 0, pe);
  }
  return out;
}

// --- construction ----------------------------------------------------------

PedigreeGraph extend(const PedigreeGraph& g, const EvolvingCycle& a, const EvolvingCycle& b, Node m) {
  if (m != g.time() + 1) {
    throw DomainError("graph at time " + std::to_string(g.time()) + " cannot be extended to " + std::to_string(m));
  }
  PedigreeGraph out = g;
  const bool vertex = is_vertex(a, b, m);
  out.advance(m, vertex, vertex ? past_edges(a, b, m) : PastEdges{});
  return out;
}

PedigreeGraph build(const EvolvingCycle& a, const EvolvingCycle& b) {
  if (a.size() != b.size()) {
    throw DomainError("cycles have different sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (a.size() < 4) throw DomainError("pedigree graphs need n >= 4");
  PedigreeGraph g;
  for (Node m = 4; m <= a.size(); ++m) {
    const bool vertex = is_vertex(a, b, m);
    g.advance(m, vertex, vertex ? past_edges(a, b, m) : PastEdges{});
  }
  return g;
}

PedigreeGraph build(const Pedigree& a, const Pedigree& b) {
  if (a.n() != b.n()) throw DomainError("pedigrees have different n");
  return build(cycle_from_pedigree(a), cycle_from_pedigree(b));
}

int component_count(const EvolvingCycle& a, const EvolvingCycle& b) {
  const int n = a.size();
  if (b.size() != n) throw DomainError("cycles have different sizes");
  std::vector<Node> parent(static_cast<std::size_t>(n) + 1, 0);
  auto find = [&](Node v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  int components = 0;
  for (Node m = 4; m <= n; ++m) {
    const NodePair nu_a = a.nu_pair(m);
    const NodePair nu_b = b.nu_pair(m);
    if (nu_a == nu_b) continue;
    parent[static_cast<std::size_t>(m)] = m;
    ++components;
    const PastEdges pe = derive_past_edges(a, b, m, nu_a, nu_b);
    for (const auto& e : {pe.ab, pe.ba}) {
      if (!e) continue;
      const Node r = find(e->lo);
      const Node rm = find(m);
      if (r != rm) {
        parent[static_cast<std::size_t>(r)] = rm;
        --components;
      }
    }
  }
  return components;
}

bool pedigree_adjacent(const Pedigree& a, const Pedigree& b) {
  if (a.n() != b.n()) {
    throw DomainError("pedigrees have different n (" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
  }
  if (a.n() < 4) throw DomainError("adjacency needs n >= 4");
  if (a == b) throw DomainError("identical pedigree: both describe the same polytope vertex");
  return component_count(cycle_from_pedigree(a), cycle_from_pedigree(b)) == 1;
}

// --- export ----------------------------------------------------------------

nlohmann::json graph_to_json(const PedigreeGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.typed_edges()) {
    edges.push_back({{"u", e.lo}, {"v", e.hi}, {"tag", std::string(tag_name(e.tag))}});
  }
  return nlohmann::json{{"n", g.time()},
                        {"vertices", g.vertices()},
                        {"edges", edges},
                        {"components", g.component_count()},
                        {"connected", g.connected()}};
}

std::string graph_to_dot(const PedigreeGraph& g) {
  std::ostringstream out;
  out << "graph pedigree_n" << g.time() << " {\n";
  for (Node v : g.vertices()) out << "  " << v << ";\n";
  for (const auto& e : g.typed_edges()) {
    out << "  " << e.hi << " -- " << e.lo << " [label=\"" << tag_name(e.tag) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// --- narration -------------------------------------------------------------

namespace {

std::string nu_text(NuRecord r) {
  if (r.empty()) return "{}";
  if (r.minus == r.plus) return "{" + std::to_string(r.minus) + "}";
  return "{" + NodePair(r.minus, r.plus).str() + "}";
}

std::string list_text(const std::vector<Node>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

RuleCheck type1_check(const EvolvingCycle& lookup_prefix, NodePair pair, EdgeTag tag, char mine, char other) {
  RuleCheck check{tag, find_inserter(lookup_prefix, pair), {}};
  const auto seg = segment_between(lookup_prefix, pair.lo(), pair.hi());
  const std::string where = std::string("segment between ") + std::to_string(pair.lo()) + " and " +
                            std::to_string(pair.hi()) + " in " + other + "_" +
                            std::to_string(lookup_prefix.size()) + " is " + list_text(seg);
  if (check.target) {
    check.detail = where + ", so nu_" + other + "(" + std::to_string(*check.target) + ") = nu_" + mine +
                   " = {" + pair.str() + "}";
  } else if (seg.empty()) {
    check.detail = where + " (empty): no node was inserted into {" + pair.str() + "}";
  } else {
    check.detail = where + ", which contains " +
                   std::to_string(*std::min_element(seg.begin(), seg.end())) + " < " + std::to_string(pair.hi());
  }
  return check;
}

RuleCheck type2_check(const EvolvingCycle& other_cycle, NodePair pair, EdgeTag tag, char mine, char other) {
  const Node ell = pair.hi();
  const NuRecord rec = other_cycle.nu(ell);
  const bool blocked = rec.contains(pair.lo());
  RuleCheck check{tag, blocked ? std::nullopt : std::optional<Node>(ell), {}};
  check.detail = std::string("max nu_") + mine + " = " + std::to_string(ell) + " and nu_" + other + "(" +
                 std::to_string(ell) + ") = " + nu_text(rec) + (blocked ? " contains " : " does not contain ") +
                 std::to_string(pair.lo());
  return check;
}

}  // namespace

RoundNarrative narrate_round(const EvolvingCycle& a, const EvolvingCycle& b, Node m) {
  if (m < 4 || m > a.size() || m > b.size()) throw DomainError("no round " + std::to_string(m) + " to narrate");
  RoundNarrative story{m, a.nu_pair(m), b.nu_pair(m), is_vertex(a, b, m), {}};
  if (!story.vertex) return story;

  const EvolvingCycle a_prev = a.prefix(m - 1);
  const EvolvingCycle b_prev = b.prefix(m - 1);
  story.checks.push_back(type1_check(b_prev, story.nu_a, EdgeTag::kT1AB, 'A', 'B'));
  story.checks.push_back(type1_check(a_prev, story.nu_b, EdgeTag::kT1BA, 'B', 'A'));
  story.checks.push_back(type2_check(b, story.nu_a, EdgeTag::kT2AB, 'A', 'B'));
  story.checks.push_back(type2_check(a, story.nu_b, EdgeTag::kT2BA, 'B', 'A'));

  // the segment-based account must agree with the O(1) history lookups
  const PastEdges fast = past_edges(a, b, m);
  for (const auto& check : story.checks) {
    const auto& slot = is_ab(check.tag) ? fast.ab : fast.ba;
    const bool fast_has = slot && slot->tag == check.tag;
    if (fast_has != check.target.has_value() || (fast_has && slot->lo != *check.target)) {
      throw InvariantViolation("segment test and history lookup disagree on " + std::string(tag_name(check.tag)) +
                               " at m=" + std::to_string(m));
    }
  }
  return story;
}

}  // namespace pedigree
