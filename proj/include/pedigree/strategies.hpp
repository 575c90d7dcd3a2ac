#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pedigree/game_state.hpp"
#include "pedigree/rng.hpp"

namespace pedigree {

/// Alice's policy: picks an edge of her current cycle. Implementations are
/// stateless, so one instance can be shared by all workers; randomness comes
/// only from the per-game rng passed in.
class Strategy {
 public:
  virtual ~Strategy() = default;
  /// Selector form accepted by make_strategy, e.g. "isolationist:prefer-c".
  virtual std::string name() const = 0;
  virtual NodePair next_move(const GameState& st, Rng& rng) const = 0;
};

/// Plays a fixed pedigree; DomainError once the script runs out.
std::unique_ptr<Strategy> scripted(const Pedigree& script);
/// Uniform over the n edges of A_n.
std::unique_ptr<Strategy> uniform_random();
/// Lowest common edge while S > 0, otherwise the lowest edge.
std::unique_ptr<Strategy> greedy_common();
/// Minimises the exact one-round probability that T drops; ties go to the
/// lowest edge, or to the lowest common edge with `prefer_c`.
std::unique_ptr<Strategy> isolationist(bool prefer_c = false);

/// Edges of a cycle in canonical order (by smaller endpoint, then larger).
std::vector<NodePair> canonical_edges(const EvolvingCycle& c);
NodePair lowest_canonical_edge(const EvolvingCycle& c);

/// Reference implementation of the isolationist choice built directly on
/// exact_transition_table; O(n^2) per call.
NodePair isolationist_by_tables(const GameState& st, bool prefer_c);

using StrategyFactory = std::function<std::unique_ptr<Strategy>(std::string_view params)>;

/// Adds a strategy selectable as "name" or "name:params".
void register_strategy(const std::string& name, StrategyFactory factory);
std::vector<std::string> registered_strategies();
/// Parses a selector: scripted:<pedigree> | random | greedy-common |
/// isolationist[:prefer-c] | any registered name.
std::unique_ptr<Strategy> make_strategy(std::string_view selector);

}  // namespace pedigree
