#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedigree/game_state.hpp"
#include "pedigree/strategies.hpp"

namespace pedigree {

/// Expensive per-round checks, each run on a deterministic sample of rounds.
struct CheckRates {
  double lemma4 = 0.0;
  double lemma3 = 0.0;
  int lemma3_max_n = 40;  // enumeration is O(T n^2)
  bool paranoid = false;
};

struct CheckTally {
  std::uint64_t lemma4_checked = 0;
  std::uint64_t lemma4_report_only_exceeded = 0;  // d-move P(0,0) <= (R-T+1)/n
  std::uint64_t lemma3_checked = 0;

  void merge(const CheckTally& o) {
    lemma4_checked += o.lemma4_checked;
    lemma4_report_only_exceeded += o.lemma4_report_only_exceeded;
    lemma3_checked += o.lemma3_checked;
  }
  friend bool operator==(const CheckTally&, const CheckTally&) = default;
};

/// One game between a strategy and a uniformly random (or scripted) Bob.
///
/// Bob's rng and Alice's rng are separate streams of the game seed. A failed
/// assertion is rethrown as InvariantViolation with the seed, the round and
/// both pedigrees appended.
class Game {
 public:
  Game(const Strategy& alice, std::uint64_t seed, std::optional<Pedigree> bob_script = std::nullopt,
       CheckRates checks = {});

  const GameState& state() const noexcept { return state_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const CheckTally& tally() const noexcept { return tally_; }

  /// Plays round n -> n+1.
  RoundOutcome step();

 private:
  NodePair bob_move();

  const Strategy* alice_;
  std::uint64_t seed_;
  std::optional<Pedigree> bob_script_;
  CheckRates checks_;
  CheckTally tally_;
  GameState state_;
  Rng alice_rng_;
  Rng bob_rng_;
};

struct RunOptions {
  std::vector<int> checkpoints;  // times at which connectivity is recorded
  std::optional<Pedigree> bob_script;
  CheckRates checks;
};

/// Per-time counters of a finished game; full graphs are not retained.
struct Trajectory {
  std::uint64_t seed = 0;
  std::string strategy;
  int n_max = 3;
  std::vector<int> s;            // S_3, ..., S_{n_max}
  std::vector<int> t;            // T_3, ..., T_{n_max}
  std::vector<int> dmoves;       // times m whose node Alice created with a d-move
  std::vector<Node> isolated_at;
  std::map<int, bool> connected_at;
  int max_simple_degree = 0;
  Pedigree alice;
  Pedigree bob;
  CheckTally tally;

  nlohmann::json to_json() const;
};

Trajectory run_game(const Strategy& alice, int n_max, std::uint64_t seed, const RunOptions& options = {});

}  // namespace pedigree
