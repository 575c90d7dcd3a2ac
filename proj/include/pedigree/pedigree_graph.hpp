#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pedigree/cycle.hpp"

namespace pedigree {

/// Edge kinds of the pedigree graph. "AB" edges are determined by Alice's
/// insertion of the newer endpoint (looked up in Bob's history), "BA" edges
/// by Bob's insertion.
enum class EdgeTag : std::uint8_t { kT1AB, kT1BA, kT2AB, kT2BA };

std::string_view tag_name(EdgeTag tag);
EdgeTag parse_tag(std::string_view name);
constexpr bool is_ab(EdgeTag tag) { return tag == EdgeTag::kT1AB || tag == EdgeTag::kT2AB; }

/// Edge between an older vertex `lo` and the vertex `hi` created with it.
struct TypedEdge {
  Node lo;
  Node hi;
  EdgeTag tag;

  // serialisation order: (hi, lo, tag)
  friend bool operator<(const TypedEdge& a, const TypedEdge& b) {
    if (a.hi != b.hi) return a.hi < b.hi;
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.tag < b.tag;
  }
  friend bool operator==(const TypedEdge&, const TypedEdge&) = default;
};

/// Edges from a new vertex to older ones. Type 1 and type 2 are mutually
/// exclusive within a direction, so there is at most one edge per direction.
struct PastEdges {
  std::optional<TypedEdge> ab;
  std::optional<TypedEdge> ba;

  int count() const { return (ab ? 1 : 0) + (ba ? 1 : 0); }
  std::vector<TypedEdge> list() const;
};

/// Vertex rule: m >= 4 joins the graph iff nu_A(m) != nu_B(m).
bool is_vertex(const EvolvingCycle& a, const EvolvingCycle& b, Node m);

/// Edge rules for a new vertex m whose insertion pairs are nu_a / nu_b (which
/// must differ). `a` and `b` provide the histories of nodes < m; they may be
/// the cycles at time m-1 or any later time. Throws InvariantViolation if
/// both types fire in one direction or a target is not a vertex.
PastEdges derive_past_edges(const EvolvingCycle& a, const EvolvingCycle& b, Node m, NodePair nu_a,
                            NodePair nu_b);

/// Edges from vertex m to older vertices; DomainError if m is not a vertex.
PastEdges past_edges(const EvolvingCycle& a, const EvolvingCycle& b, Node m);

/// Pedigree graph G_n with incremental component tracking.
///
/// Vertices and edges are only ever added, so a union-find without deletion
/// keeps the component count. Parallel edges with different tags are stored
/// separately; simple degree and connectivity use the collapsed view.
class PedigreeGraph {
 public:
  /// G_3: no vertices.
  PedigreeGraph() = default;

  int time() const noexcept { return time_; }
  bool has_vertex(Node v) const noexcept;
  std::vector<Node> vertices() const;
  int vertex_count() const noexcept { return vertex_count_; }
  /// Sorted by (hi, lo, tag).
  const std::vector<TypedEdge>& typed_edges() const noexcept { return edges_; }

  int component_count() const noexcept { return components_; }
  bool connected() const noexcept { return components_ == 1; }
  Node component_root(Node v) const;
  /// Largest vertex in v's component.
  Node component_max(Node v) const;
  const std::vector<Node>& component_roots() const noexcept { return roots_; }
  std::vector<std::vector<Node>> components() const;

  int simple_degree(Node v) const;
  int typed_past_degree(Node v, bool ab_direction) const;
  int max_simple_degree() const noexcept { return max_degree_; }
  /// Largest number of typed edges from a vertex to older vertices.
  int max_typed_past_degree() const;

  /// Advances from time m-1 to m. Throws InvariantViolation when a vertex
  /// would exceed simple degree 6.
  void advance(Node m, bool vertex, const PastEdges& edges);

  /// Subgraph induced by the vertices <= m, as it was at time m.
  PedigreeGraph restricted(int m) const;

  friend bool operator==(const PedigreeGraph& a, const PedigreeGraph& b) {
    return a.time_ == b.time_ && a.vertex_ == b.vertex_ && a.edges_ == b.edges_;
  }

 private:
  Node find(Node v);
  Node find_const(Node v) const;
  void grow(Node m);

  int time_ = 3;
  int vertex_count_ = 0;
  int components_ = 0;
  int max_degree_ = 0;
  std::vector<char> vertex_ = std::vector<char>(4, 0);
  std::vector<TypedEdge> edges_;
  std::vector<Node> parent_ = std::vector<Node>(4, 0);
  std::vector<int> size_ = std::vector<int>(4, 0);
  std::vector<Node> max_ = std::vector<Node>(4, 0);
  std::vector<std::uint8_t> degree_ = std::vector<std::uint8_t>(4, 0);
  std::vector<std::uint8_t> past_ab_ = std::vector<std::uint8_t>(4, 0);
  std::vector<std::uint8_t> past_ba_ = std::vector<std::uint8_t>(4, 0);
  std::vector<Node> roots_;
};

/// G at time m from G at time m-1.
PedigreeGraph extend(const PedigreeGraph& g, const EvolvingCycle& a, const EvolvingCycle& b, Node m);

PedigreeGraph build(const EvolvingCycle& a, const EvolvingCycle& b);
PedigreeGraph build(const Pedigree& a, const Pedigree& b);

/// Adjacency on the Pedigree polytope: the pedigree graph is connected.
/// Throws DomainError for identical pedigrees or mismatched n.
bool pedigree_adjacent(const Pedigree& a, const Pedigree& b);

/// Component count of G_n without materialising the graph (census hot path).
int component_count(const EvolvingCycle& a, const EvolvingCycle& b);

nlohmann::json graph_to_json(const PedigreeGraph& g);
std::string graph_to_dot(const PedigreeGraph& g);

/// Human-readable account of the four edge rules at time m, with type-1 edges
/// decided by the segment test on the cycles at time m-1.
struct RuleCheck {
  EdgeTag tag;
  std::optional<Node> target;
  std::string detail;
};

struct RoundNarrative {
  Node m;
  NodePair nu_a;
  NodePair nu_b;
  bool vertex;
  std::vector<RuleCheck> checks;  // empty when m is not a vertex
};

RoundNarrative narrate_round(const EvolvingCycle& a, const EvolvingCycle& b, Node m);

}  // namespace pedigree
