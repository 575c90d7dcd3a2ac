#include "pedigree/game.hpp"

#include <algorithm>

#include "pedigree/errors.hpp"

namespace pedigree {

Game::Game(const Strategy& alice, std::uint64_t seed, std::optional<Pedigree> bob_script, CheckRates checks)
    : alice_(&alice),
      seed_(seed),
      bob_script_(std::move(bob_script)),
      checks_(checks),
      alice_rng_(make_rng(seed, RngRole::kAlice)),
      bob_rng_(make_rng(seed, RngRole::kBob)) {
  state_.set_paranoid(checks_.paranoid);
}

NodePair Game::bob_move() {
  const int n = state_.time();
  if (bob_script_) {
    if (n >= bob_script_->n()) throw DomainError("Bob's script exhausted at n=" + std::to_string(n));
    return kth_edge(state_.bob(), bob_script_->choice(n));
  }
  return state_.bob().edge_from(uniform_int(bob_rng_, 1, n));
}

RoundOutcome Game::step() {
  const int n = state_.time();
  try {
    const NodePair a = alice_->next_move(state_, alice_rng_);
    if (!state_.alice().has_edge(a)) {
      throw InvariantViolation(alice_->name() + " played {" + a.str() + "}, not an edge of A_" + std::to_string(n));
    }
    if (checks_.lemma4 > 0 && sampled(seed_ ^ 0x4c34u, static_cast<std::uint64_t>(n), checks_.lemma4)) {
      const ConformanceReport rep = check_lemma4(state_, a);
      ++tally_.lemma4_checked;
      if (!rep.strict_pass()) {
        const auto f = rep.strict_failures().front();
        throw InvariantViolation("transition table entry " + f.cell + " " + f.relation + " " + f.formula +
                                 " fails: observed " + std::to_string(f.observed) + ", bound " +
                                 std::to_string(f.bound) + " (in units of 1/" + std::to_string(n) + ")");
      }
      for (const auto& f : rep.report_only_failures()) {
        if (f.formula == "(R-T+1)/n") ++tally_.lemma4_report_only_exceeded;
      }
    }
    if (checks_.lemma3 > 0 && n <= checks_.lemma3_max_n &&
        sampled(seed_ ^ 0x4c33u, static_cast<std::uint64_t>(n), checks_.lemma3)) {
      ++tally_.lemma3_checked;
      if (!lemma3_check(state_)) throw InvariantViolation("a component's largest vertex cannot be attached");
    }
    return state_.apply(a, bob_move());
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string(e.what()) + " [seed=" + std::to_string(seed_) + ", round " +
                             std::to_string(n) + "->" + std::to_string(n + 1) + ", " + state_.dump() + "]");
  }
}

Trajectory run_game(const Strategy& alice, int n_max, std::uint64_t seed, const RunOptions& options) {
  if (n_max < 3) throw DomainError("n_max must be at least 3");
  Game game(alice, seed, options.bob_script, options.checks);
  Trajectory tr;
  tr.seed = seed;
  tr.strategy = alice.name();
  tr.n_max = n_max;
  auto record = [&] {
    const GameState& st = game.state();
    tr.s.push_back(st.s());
    tr.t.push_back(st.t());
    if (std::find(options.checkpoints.begin(), options.checkpoints.end(), st.time()) != options.checkpoints.end()) {
      tr.connected_at[st.time()] = st.graph().connected();
    }
  };
  record();
  while (game.state().time() < n_max) {
    const RoundOutcome o = game.step();
    if (o.kind == MoveKind::kDifferent) tr.dmoves.push_back(o.time);
    record();
  }
  const GameState& st = game.state();
  tr.isolated_at = st.isolated_events();
  tr.max_simple_degree = st.graph().max_simple_degree();
  tr.alice = pedigree_from_cycle(st.alice());
  tr.bob = pedigree_from_cycle(st.bob());
  tr.tally = game.tally();
  return tr;
}

nlohmann::json Trajectory::to_json() const {
  nlohmann::json connected = nlohmann::json::object();
  for (const auto& [n, c] : connected_at) connected[std::to_string(n)] = c;
  return {{"seed", seed},
          {"strategy", strategy},
          {"n_max", n_max},
          {"S", s},
          {"T", t},
          {"dmoves", dmoves},
          {"isolated_at", isolated_at},
          {"connected_at", connected},
          {"max_simple_degree", max_simple_degree},
          {"alice", format_pedigree(alice)},
          {"bob", format_pedigree(bob)}};
}

}  // namespace pedigree
