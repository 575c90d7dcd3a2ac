#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedigree/cycle.hpp"
#include "pedigree/pedigree_graph.hpp"

namespace pedigree {

/// c-move: Alice inserts into an edge both cycles share; d-move: into one of
/// her edges that Bob does not have.
enum class MoveKind : std::uint8_t { kCommon, kDifferent };

inline const char* move_kind_name(MoveKind k) { return k == MoveKind::kCommon ? "c" : "d"; }

/// Exact census of Bob's edges relative to Alice's chosen edge.
struct MoveClass {
  MoveKind kind;
  NodePair alice_pair;
  int s_star;              // common edges disjoint from alice_pair
  int r;                   // non-common Bob edges disjoint from alice_pair
  int common_incident;     // common edges meeting alice_pair, other than itself
  int noncommon_incident;  // non-common Bob edges meeting alice_pair
};

/// Effect of one round (Alice inserts into `alice`, Bob into `bob`).
struct RoundOutcome {
  Node time;  // the node created in this round
  NodePair alice;
  NodePair bob;
  MoveKind kind;
  int delta_s;
  int delta_t;
  bool vertex;
  PastEdges edges;

  bool isolated() const { return vertex && edges.count() == 0; }
};

/// Joint state of the connectivity game at time n.
///
/// Besides both cycles and the pedigree graph, the state keeps the ordered set
/// of common edges and, per component of the pedigree graph, how many of Bob's
/// current edges would attach a new vertex to that component through a BA edge
/// (type 1 or type 2 from B to A). Every round touches O(1) of this
/// bookkeeping, so the exact probability that Bob merges two components is
/// available in O(1) per Alice candidate.
class GameState {
 public:
  /// Both cycles are the triangle: S = 3, T = 0.
  GameState();

  int time() const noexcept { return alice_.size(); }
  const EvolvingCycle& alice() const noexcept { return alice_; }
  const EvolvingCycle& bob() const noexcept { return bob_; }
  const PedigreeGraph& graph() const noexcept { return graph_; }
  const std::set<NodePair>& common() const noexcept { return common_; }
  int s() const noexcept { return static_cast<int>(common_.size()); }
  int t() const noexcept { return graph_.component_count(); }
  const std::vector<Node>& isolated_events() const noexcept { return isolated_; }
  int y() const noexcept { return static_cast<int>(isolated_.size()); }

  bool is_common(NodePair e) const noexcept { return alice_.has_edge(e) && bob_.has_edge(e); }
  /// Throws DomainError if `alice_edge` is not an edge of Alice's cycle.
  MoveKind kind_of(NodePair alice_edge) const;

  /// Vertex a new node would attach to through an AB edge if Alice inserted it
  /// into `alice_edge` (and Bob into anything else).
  std::optional<Node> ab_target(NodePair alice_edge) const;
  /// Same for a BA edge when Bob inserts into `bob_edge`.
  std::optional<Node> ba_target(NodePair bob_edge) const;

  int ba_total() const noexcept { return ba_total_; }
  /// Bob edges whose BA target lies in the component of vertex v.
  int ba_count(Node v) const;
  /// Number of Bob edges that make T drop by one when Alice plays
  /// `alice_edge`; zero for every c-move.
  int merge_count(NodePair alice_edge) const;

  /// Outcome of a round without changing the state.
  RoundOutcome preview(NodePair alice_edge, NodePair bob_edge) const;
  /// Plays a round. Structural properties of the round are asserted and
  /// reported as InvariantViolation.
  RoundOutcome apply(NodePair alice_edge, NodePair bob_edge);

  /// Recompute the common-edge set and the attachment counts from scratch
  /// after every round.
  void set_paranoid(bool on) noexcept { paranoid_ = on; }
  void verify_bookkeeping() const;

  /// Replayable description: both pedigrees in index form.
  std::string dump() const;

 private:
  Node root(Node v) const { return graph_.component_root(v); }
  /// Distinct components hit by the edges (0 marks an unused slot).
  std::pair<Node, Node> target_roots(const PastEdges& edges) const;

  EvolvingCycle alice_;
  EvolvingCycle bob_;
  PedigreeGraph graph_;
  std::set<NodePair> common_;
  std::vector<Node> isolated_;
  std::vector<int> ba_count_ = std::vector<int>(4, 0);
  int ba_total_ = 0;
  bool paranoid_ = false;
};

GameState initial_state();
/// State reached by playing both pedigrees' insertions round by round.
GameState replay(const Pedigree& alice, const Pedigree& bob);
MoveClass classify_move(const GameState& st, NodePair alice_edge);
GameState apply_round(const GameState& st, NodePair alice_edge, NodePair bob_edge);

/// Distribution of (dS, dT) over Bob's n equally likely edges.
struct TransitionTable {
  int denominator = 0;
  std::map<std::pair<int, int>, int> counts;

  int count(int ds, int dt) const;
  int total() const;
  nlohmann::json to_json() const;
};

TransitionTable exact_transition_table(const GameState& st, NodePair alice_edge);

/// One cell (or cell group) of the transition bound table, in units of 1/n.
struct ConformanceEntry {
  std::string cell;      // e.g. "P(-1,0)"
  std::string relation;  // "==", "<=", ">="
  std::string formula;   // the bound as a formula, e.g. "R/n"
  int observed;
  int bound;
  bool strict;
  bool pass;
};

struct ConformanceReport {
  int n;
  int s;
  int t;
  MoveClass move;
  TransitionTable table;
  std::vector<ConformanceEntry> entries;

  bool strict_pass() const;
  std::vector<ConformanceEntry> strict_failures() const;
  std::vector<ConformanceEntry> report_only_failures() const;
  nlohmann::json to_json() const;
};

/// Compares the exact table against the c-move / d-move bound tables. The
/// d-move bound P(0,0) <= (R-T+1)/n, and its refinement adding the common
/// incident edges, are report-only.
ConformanceReport check_lemma4(const GameState& st, NodePair alice_edge);

/// For every component with largest vertex k and every Alice edge, some Bob
/// edge creates the next vertex adjacent to k (full enumeration).
bool lemma3_check(const GameState& st);

}  // namespace pedigree
