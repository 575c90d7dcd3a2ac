#include "pedigree/game_state.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "pedigree/errors.hpp"

namespace pedigree {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

std::string round_text(Node m, NodePair a, NodePair b) {
  return " (m=" + std::to_string(m) + ", a={" + a.str() + "}, b={" + b.str() + "})";
}

}  // namespace

GameState::GameState() {
  common_ = {NodePair(1, 2), NodePair(2, 3), NodePair(1, 3)};
}

GameState initial_state() { return GameState(); }

GameState replay(const Pedigree& alice, const Pedigree& bob) {
  if (alice.n() != bob.n()) {
    throw DomainError("pedigrees on different numbers of cities: " + std::to_string(alice.n()) + " and " +
                      std::to_string(bob.n()));
  }
  GameState st;
  for (int k = 3; k < alice.n(); ++k) st.apply(kth_edge(st.alice(), alice.choice(k)), kth_edge(st.bob(), bob.choice(k)));
  return st;
}

MoveKind GameState::kind_of(NodePair alice_edge) const {
  if (!alice_.has_edge(alice_edge)) throw DomainError("{" + alice_edge.str() + "} is not an edge of Alice's cycle");
  return bob_.has_edge(alice_edge) ? MoveKind::kCommon : MoveKind::kDifferent;
}

std::optional<Node> GameState::ab_target(NodePair e) const {
  if (auto k = bob_.inserter_of(e)) return k;
  if (!bob_.nu(e.hi()).contains(e.lo())) return e.hi();
  return std::nullopt;
}

std::optional<Node> GameState::ba_target(NodePair e) const {
  if (auto k = alice_.inserter_of(e)) return k;
  if (!alice_.nu(e.hi()).contains(e.lo())) return e.hi();
  return std::nullopt;
}

std::pair<Node, Node> GameState::target_roots(const PastEdges& edges) const {
  Node r1 = edges.ab ? root(edges.ab->lo) : 0;
  Node r2 = edges.ba ? root(edges.ba->lo) : 0;
  if (r2 == r1) r2 = 0;
  if (!r1) std::swap(r1, r2);
  return {r1, r2};
}

int GameState::ba_count(Node v) const { return ba_count_[static_cast<std::size_t>(root(v))]; }

int GameState::merge_count(NodePair alice_edge) const {
  if (kind_of(alice_edge) == MoveKind::kCommon) return 0;
  const auto t = ab_target(alice_edge);
  require(t.has_value(), "d-move {" + alice_edge.str() + "} has no AB target at n=" + std::to_string(time()));
  return ba_total_ - ba_count(*t);
}

RoundOutcome GameState::preview(NodePair a, NodePair b) const {
  const Node m = time() + 1;
  if (!alice_.has_edge(a)) throw DomainError("{" + a.str() + "} is not an edge of Alice's cycle at n=" + std::to_string(time()));
  if (!bob_.has_edge(b)) throw DomainError("{" + b.str() + "} is not an edge of Bob's cycle at n=" + std::to_string(time()));

  RoundOutcome out{m, a, b, kind_of(a), 0, 0, false, {}};
  if (a == b) {
    out.delta_s = 1;
    return out;
  }
  const int meet = (b.contains(a.lo()) ? 1 : 0) + (b.contains(a.hi()) ? 1 : 0);
  out.delta_s = meet - (is_common(a) ? 1 : 0) - (is_common(b) ? 1 : 0);
  out.vertex = true;
  out.edges = derive_past_edges(alice_, bob_, m, a, b);
  const auto [r1, r2] = target_roots(out.edges);
  out.delta_t = 1 - (r1 ? 1 : 0) - (r2 ? 1 : 0);
  return out;
}

RoundOutcome GameState::apply(NodePair a, NodePair b) {
  const RoundOutcome out = preview(a, b);
  const Node m = out.time;
  // messages are built only on failure: this runs every round
  auto check = [&](bool ok, const char* what) {
    if (!ok) throw InvariantViolation(what + round_text(m, a, b));
  };

  // Structural facts about a single round.
  if (out.vertex) {
    const bool a_in_b = bob_.has_edge(a);
    const bool b_in_a = alice_.has_edge(b);
    check(out.isolated() == (a_in_b && b_in_a), "isolation characterization fails");
    check(out.edges.ab.has_value() == !a_in_b, "AB attachment does not match the move kind");
    check(out.edges.ba.has_value() == !b_in_a, "BA attachment does not match Bob's edge");
  }
  check(std::abs(out.delta_s) <= 2, "|dS| > 2");
  check(out.delta_s != -2 || out.kind == MoveKind::kCommon, "dS = -2 on a d-move");
  check(out.delta_t != -1 || out.kind == MoveKind::kDifferent, "dT = -1 on a c-move");
  check(out.delta_t != 1 || out.kind == MoveKind::kCommon, "dT = +1 on a d-move");

  // Attachment counts, part 1: on the components as they are now.
  if (auto tb = ba_target(b)) {
    ba_count_[static_cast<std::size_t>(root(*tb))] -= 1;
    ba_total_ -= 1;
  }
  int merged_count = 0;
  {
    const auto [r1, r2] = target_roots(out.edges);
    if (r1) merged_count += ba_count_[static_cast<std::size_t>(r1)];
    if (r2) merged_count += ba_count_[static_cast<std::size_t>(r2)];
  }
  const bool a_gains_target = a != b && bob_.has_edge(a);

  graph_.advance(m, out.vertex, out.edges);
  ba_count_.resize(static_cast<std::size_t>(m) + 1, 0);

  common_.erase(a);
  common_.erase(b);
  alice_.insert(a);
  bob_.insert(b);
  for (Node y : {a.lo(), a.hi()}) {
    const NodePair e(y, m);
    if (bob_.has_edge(e)) common_.insert(e);
  }

  if (out.vertex) {
    const auto rm = static_cast<std::size_t>(graph_.component_root(m));
    int added = 0;
    for (Node y : {b.lo(), b.hi()}) {
      if (!a.contains(y)) ++added;  // {y, m} is Bob's and not Alice's: targets m
    }
    if (a_gains_target) ++added;  // a stays in B but leaves A: its inserter is m
    ba_count_[rm] = merged_count + added;
    ba_total_ += added;
    if (out.isolated()) isolated_.push_back(m);
  }

  check(t() == graph_.component_count(), "T out of sync");
  check(t() <= y(), "T exceeds the number of isolated vertices");
  if (paranoid_) verify_bookkeeping();
  return out;
}

void GameState::verify_bookkeeping() const {
  const int n = time();
  std::set<NodePair> common;
  for (Node v = 1; v <= n; ++v) {
    const NodePair e = alice_.edge_from(v);
    if (bob_.has_edge(e)) common.insert(e);
  }
  require(common == common_, "common edge set out of sync at n=" + std::to_string(n));

  std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
  int total = 0;
  for (Node v = 1; v <= n; ++v) {
    const NodePair e = bob_.edge_from(v);
    const auto tgt = ba_target(e);
    require(tgt.has_value() == !alice_.has_edge(e),
            "BA target of {" + e.str() + "} disagrees with membership in A at n=" + std::to_string(n));
    if (!tgt) continue;
    require(graph_.has_vertex(*tgt), "BA target " + std::to_string(*tgt) + " is not a vertex");
    ++counts[static_cast<std::size_t>(root(*tgt))];
    ++total;
  }
  require(total == ba_total_, "BA target total out of sync at n=" + std::to_string(n));
  for (Node r : graph_.component_roots()) {
    require(counts[static_cast<std::size_t>(r)] == ba_count_[static_cast<std::size_t>(r)],
            "BA target count of component " + std::to_string(r) + " out of sync at n=" + std::to_string(n));
  }
  for (Node v = 1; v <= n; ++v) {
    if (v >= 4 && graph_.has_vertex(v)) {
      require(is_vertex(alice_, bob_, v), "graph vertex " + std::to_string(v) + " is not a vertex");
    } else if (v >= 4) {
      require(!is_vertex(alice_, bob_, v), "missing graph vertex " + std::to_string(v));
    }
  }
}

std::string GameState::dump() const {
  return "A=" + format_pedigree(pedigree_from_cycle(alice_)) + " B=" + format_pedigree(pedigree_from_cycle(bob_));
}

MoveClass classify_move(const GameState& st, NodePair a) {
  MoveClass mc{st.kind_of(a), a, 0, 0, 0, 0};
  const int n = st.time();
  int self = 0;
  for (Node v = 1; v <= n; ++v) {
    const NodePair b = st.bob().edge_from(v);
    if (b == a) {
      ++self;
      continue;
    }
    const bool common = st.alice().has_edge(b);
    const bool meets = b.meets(a);
    if (common) {
      (meets ? mc.common_incident : mc.s_star) += 1;
    } else {
      (meets ? mc.noncommon_incident : mc.r) += 1;
    }
  }
  auto check = [&](bool ok, const char* what) {
    if (!ok) throw InvariantViolation(what + (" for {" + a.str() + "} at n=" + std::to_string(n) + ": " + st.dump()));
  };
  check(self == (mc.kind == MoveKind::kCommon ? 1 : 0), "move kind disagrees with Bob's edges");
  check(self + mc.common_incident + mc.noncommon_incident + mc.s_star + mc.r == n, "edge partition");
  check(mc.s_star == st.s() - self - mc.common_incident, "S* identity");
  check(mc.common_incident <= 2 && mc.noncommon_incident + mc.common_incident <= 4, "incident edge count");
  return mc;
}

GameState apply_round(const GameState& st, NodePair a, NodePair b) {
  GameState next = st;
  next.apply(a, b);
  return next;
}

int TransitionTable::count(int ds, int dt) const {
  auto it = counts.find({ds, dt});
  return it == counts.end() ? 0 : it->second;
}

int TransitionTable::total() const {
  int sum = 0;
  for (const auto& [cell, c] : counts) sum += c;
  return sum;
}

nlohmann::json TransitionTable::to_json() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [cell, c] : counts) {
    cells.push_back({{"dS", cell.first}, {"dT", cell.second}, {"count", c}});
  }
  return {{"denominator", denominator}, {"cells", cells}};
}

TransitionTable exact_transition_table(const GameState& st, NodePair a) {
  TransitionTable table;
  table.denominator = st.time();
  for (Node v = 1; v <= st.time(); ++v) {
    const RoundOutcome o = st.preview(a, st.bob().edge_from(v));
    ++table.counts[{o.delta_s, o.delta_t}];
  }
  return table;
}

bool ConformanceReport::strict_pass() const { return strict_failures().empty(); }

std::vector<ConformanceEntry> ConformanceReport::strict_failures() const {
  std::vector<ConformanceEntry> out;
  for (const auto& e : entries) {
    if (e.strict && !e.pass) out.push_back(e);
  }
  return out;
}

std::vector<ConformanceEntry> ConformanceReport::report_only_failures() const {
  std::vector<ConformanceEntry> out;
  for (const auto& e : entries) {
    if (!e.strict && !e.pass) out.push_back(e);
  }
  return out;
}

nlohmann::json ConformanceReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    rows.push_back({{"cell", e.cell},
                    {"relation", e.relation},
                    {"bound_formula", e.formula},
                    {"observed", e.observed},
                    {"bound", e.bound},
                    {"strict", e.strict},
                    {"pass", e.pass}});
  }
  return {{"n", n},
          {"S", s},
          {"T", t},
          {"move", move_kind_name(move.kind)},
          {"alice_edge", move.alice_pair.str()},
          {"S_star", move.s_star},
          {"R", move.r},
          {"common_incident", move.common_incident},
          {"noncommon_incident", move.noncommon_incident},
          {"table", table.to_json()},
          {"entries", rows}};
}

ConformanceReport check_lemma4(const GameState& st, NodePair a) {
  ConformanceReport rep{st.time(), st.s(), st.t(), classify_move(st, a), exact_transition_table(st, a), {}};
  const auto& tab = rep.table;
  const int ss = rep.move.s_star;
  const int r = rep.move.r;
  const int t = rep.t;

  auto add = [&](std::string cell, std::string rel, std::string formula, int observed, int bound, bool strict) {
    bool pass = rel == "==" ? observed == bound : rel == "<=" ? observed <= bound : observed >= bound;
    rep.entries.push_back({std::move(cell), std::move(rel), std::move(formula), observed, bound, strict, pass});
  };
  auto cell = [&](int ds, int dt) {
    return "P(" + std::to_string(ds) + "," + std::to_string(dt) + ")";
  };
  auto others_zero = [&](const std::vector<std::pair<int, int>>& allowed) {
    int other = 0;
    for (const auto& [c, k] : tab.counts) {
      if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) other += k;
    }
    add("other cells", "==", "0", other, 0, true);
  };

  if (rep.move.kind == MoveKind::kCommon) {
    add(cell(-2, 1), "==", "S*/n", tab.count(-2, 1), ss, true);
    add(cell(-1, 1), "<=", "2/n", tab.count(-1, 1), 2, true);
    add(cell(-1, 0), "==", "R/n", tab.count(-1, 0), r, true);
    add(cell(0, 0), "<=", "2/n", tab.count(0, 0), 2, true);
    add(cell(1, 0), "==", "1/n", tab.count(1, 0), 1, true);
    others_zero({{-2, 1}, {-1, 1}, {-1, 0}, {0, 0}, {1, 0}});
  } else {
    add(cell(-1, 0), "==", "S*/n", tab.count(-1, 0), ss, true);
    add(cell(0, 0), "<=", "(R-T+1)/n", tab.count(0, 0), r - t + 1, false);
    add(cell(0, 0) + " refined", "<=", "(R-T+1+common_incident)/n", tab.count(0, 0),
        r - t + 1 + rep.move.common_incident, false);
    add(cell(1, 0), "<=", "4/n", tab.count(1, 0), 4, true);
    add(cell(0, -1) + "+" + cell(1, -1), ">=", "(T-1)/n", tab.count(0, -1) + tab.count(1, -1), t - 1, true);
    others_zero({{-1, 0}, {0, 0}, {1, 0}, {0, -1}, {1, -1}});
  }
  add("total", "==", "n/n", tab.total(), rep.n, true);
  return rep;
}

bool lemma3_check(const GameState& st) {
  const int n = st.time();
  for (Node r : st.graph().component_roots()) {
    const Node k = st.graph().component_max(r);
    for (Node u = 1; u <= n; ++u) {
      const NodePair a = st.alice().edge_from(u);
      bool found = false;
      for (Node v = 1; v <= n && !found; ++v) {
        const NodePair b = st.bob().edge_from(v);
        if (a == b) continue;
        for (const auto& e : derive_past_edges(st.alice(), st.bob(), n + 1, a, b).list()) {
          if (e.lo == k) found = true;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace pedigree
