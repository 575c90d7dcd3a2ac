#pragma once

#include <optional>
#include <vector>

#include "pedigree/node_pair.hpp"
#include "pedigree/pedigree.hpp"

namespace pedigree {

/// Insertion neighbours of a node: `minus` precedes it and `plus` follows it
/// (positive direction) at the moment it was inserted. Node 1 has none (both
/// 0) and node 2 has minus == plus == 1.
struct NuRecord {
  Node minus = 0;
  Node plus = 0;

  bool contains(Node v) const noexcept { return v != 0 && (minus == v || plus == v); }
  bool empty() const noexcept { return minus == 0; }
  friend bool operator==(const NuRecord&, const NuRecord&) = default;
};

/// A cycle on [n] grown from the triangle by node insertion.
///
/// Stored as a doubly linked ring keyed by node label: `next` walks in the
/// positive direction (from node 1, node 2 comes before node 3). Inserting a
/// node never changes the relative order of 1, 2, 3, so the orientation is
/// stable under growth.
///
/// Besides the ring, every node keeps its insertion record nu(k), and every
/// node j keeps which later node (if any) was inserted into each of its two
/// "original" edges {nu-(j), j} and {j, nu+(j)}. An edge {i, j} with i < j
/// can only ever exist when i is in nu(j), so this answers "which node was
/// inserted into {i, j}" in O(1).
///
/// Public operations are value-returning; `insert` mutates in place and is
/// meant for owners that evolve a cycle round by round.
class EvolvingCycle {
 public:
  /// The triangle 1 -> 2 -> 3 -> 1.
  EvolvingCycle();

  int size() const noexcept { return n_; }
  Node next(Node v) const { return next_[index(v)]; }
  Node prev(Node v) const { return prev_[index(v)]; }

  NuRecord nu(Node k) const { return nu_[index(k)]; }
  /// nu(k) as a pair; requires k >= 3.
  NodePair nu_pair(Node k) const;

  bool has_edge(NodePair e) const noexcept;
  /// Node m with nu(m) == e, if one has been inserted into e.
  std::optional<Node> inserter_of(NodePair e) const noexcept;

  /// Nodes in positive order starting at node 1.
  std::vector<Node> order() const;
  /// Edges in index order: edge k joins the k-th and (k+1)-th node of order().
  std::vector<NodePair> edges() const;
  /// The edge whose positive-direction tail is `tail`.
  NodePair edge_from(Node tail) const { return NodePair(tail, next(tail)); }
  /// 1-based position of edge `e` in index order.
  int edge_index(NodePair e) const;

  /// Inserts node size()+1 into edge `e` (must be an edge).
  void insert(NodePair e);

  /// Sub-cycle on [m] obtained by deleting the nodes > m.
  EvolvingCycle prefix(int m) const;

  /// Same cyclic order (and hence same insertion history).
  friend bool operator==(const EvolvingCycle& a, const EvolvingCycle& b) {
    return a.next_ == b.next_;
  }

 private:
  std::size_t index(Node v) const;

  int n_ = 3;
  std::vector<Node> next_;
  std::vector<Node> prev_;
  std::vector<NuRecord> nu_;
  std::vector<Node> inserted_minus_;  // node inserted into {nu-(j), j}
  std::vector<Node> inserted_plus_;   // node inserted into {j, nu+(j)}
};

EvolvingCycle base_cycle();

/// {p_k, p_{k+1}} where p_1 = 1, p_2, ... is the positive order.
NodePair kth_edge(const EvolvingCycle& c, int k);

/// New cycle on [n+1] with node n+1 subdividing the edge_index-th edge.
EvolvingCycle insert_node(const EvolvingCycle& c, int edge_index);

/// (nu-(k), nu+(k)) recomputed from the ring alone: walking from k, the first
/// smaller node in each direction.
NuRecord nu_by_walk(const EvolvingCycle& c, Node k);

/// The open arc between i and j that avoids min({1,2,3} \ {i,j}), listed in
/// positive traversal order.
std::vector<Node> segment_between(const EvolvingCycle& c, Node i, Node j);

/// The node m with nu(m) == pair, located via the segment test: the segment
/// between the pair must be non-empty with all nodes larger than both ends,
/// and m is its minimum.
std::optional<Node> find_inserter(const EvolvingCycle& c, NodePair pair);

EvolvingCycle cycle_from_pedigree(const Pedigree& p);

/// Inverse of cycle_from_pedigree, computed from the ring only: nodes are
/// peeled from the largest down to recover each nu, and edge positions are
/// counted with a Fenwick tree over the final positive order.
Pedigree pedigree_from_cycle(const EvolvingCycle& c);

/// Pedigree built from the nu pairs of nodes 4..n (pair form). Throws
/// DomainError if some pair is not an edge at its insertion time.
Pedigree pedigree_from_pairs(int n, const std::vector<NodePair>& pairs);

/// nu(4), ..., nu(n) of a pedigree's cycle.
std::vector<NodePair> insertion_pairs(const EvolvingCycle& c);

}  // namespace pedigree
