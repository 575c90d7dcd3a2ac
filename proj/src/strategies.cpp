#include "pedigree/strategies.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

#include "pedigree/errors.hpp"

namespace pedigree {

std::vector<NodePair> canonical_edges(const EvolvingCycle& c) {
  std::vector<NodePair> out;
  out.reserve(static_cast<std::size_t>(c.size()));
  for (Node v = 1; v <= c.size(); ++v) {
    Node x = c.next(v);
    Node y = c.prev(v);
    if (x > y) std::swap(x, y);
    if (x > v) out.emplace_back(v, x);
    if (y > v) out.emplace_back(v, y);
  }
  return out;
}

NodePair lowest_canonical_edge(const EvolvingCycle& c) {
  // node 1 is the smallest endpoint; its smaller neighbour wins
  return NodePair(1, std::min(c.next(1), c.prev(1)));
}

namespace {

class Scripted final : public Strategy {
 public:
  explicit Scripted(Pedigree p) : script_(std::move(p)) {}
  std::string name() const override { return "scripted:" + format_pedigree(script_); }
  NodePair next_move(const GameState& st, Rng&) const override {
    const int n = st.time();
    if (n >= script_.n()) {
      throw DomainError("script exhausted: pedigree has " + std::to_string(script_.n()) +
                        " cities, game needs node " + std::to_string(n + 1));
    }
    return kth_edge(st.alice(), script_.choice(n));
  }

 private:
  Pedigree script_;
};

class UniformRandom final : public Strategy {
 public:
  std::string name() const override { return "random"; }
  NodePair next_move(const GameState& st, Rng& rng) const override {
    // uniform tail node <=> uniform edge
    return st.alice().edge_from(uniform_int(rng, 1, st.time()));
  }
};

class GreedyCommon final : public Strategy {
 public:
  std::string name() const override { return "greedy-common"; }
  NodePair next_move(const GameState& st, Rng&) const override {
    if (!st.common().empty()) return *st.common().begin();
    return lowest_canonical_edge(st.alice());
  }
};

class Isolationist final : public Strategy {
 public:
  explicit Isolationist(bool prefer_c) : prefer_c_(prefer_c) {}
  std::string name() const override { return prefer_c_ ? "isolationist:prefer-c" : "isolationist"; }

  // A c-move never lets T drop, so its score is 0. A d-move's score is the
  // number of Bob edges whose BA target sits in another component than the
  // AB target, which the state keeps per component.
  NodePair next_move(const GameState& st, Rng&) const override {
    if (prefer_c_ && st.s() > 0) return *st.common().begin();
    if (st.t() <= 1) return lowest_canonical_edge(st.alice());

    int floor = 0;
    if (st.s() == 0) {
      int best_component = 0;
      for (Node r : st.graph().component_roots()) best_component = std::max(best_component, st.ba_count(r));
      floor = st.ba_total() - best_component;
    }
    std::optional<NodePair> best;
    int best_score = INT_MAX;
    for (const NodePair& e : canonical_edges(st.alice())) {
      const int score = st.merge_count(e);
      if (score < best_score) {
        best = e;
        best_score = score;
        if (score == floor) break;
      }
    }
    return *best;
  }

 private:
  bool prefer_c_;
};

struct Registry {
  std::mutex mu;
  std::map<std::string, StrategyFactory> factories;
};

Registry& registry() {
  static Registry* r = [] {
    auto* reg = new Registry;
    reg->factories["random"] = [](std::string_view params) {
      if (!params.empty()) throw DomainError("random takes no parameters");
      return uniform_random();
    };
    reg->factories["greedy-common"] = [](std::string_view params) {
      if (!params.empty()) throw DomainError("greedy-common takes no parameters");
      return greedy_common();
    };
    reg->factories["isolationist"] = [](std::string_view params) {
      if (params.empty()) return isolationist(false);
      if (params == "prefer-c") return isolationist(true);
      throw DomainError("unknown isolationist parameter '" + std::string(params) + "'");
    };
    reg->factories["scripted"] = [](std::string_view params) {
      if (params.empty()) throw DomainError("scripted needs a pedigree, e.g. scripted:n:5;idx:1,2");
      return scripted(parse_pedigree(params));
    };
    return reg;
  }();
  return *r;
}

}  // namespace

std::unique_ptr<Strategy> scripted(const Pedigree& script) { return std::make_unique<Scripted>(script); }
std::unique_ptr<Strategy> uniform_random() { return std::make_unique<UniformRandom>(); }
std::unique_ptr<Strategy> greedy_common() { return std::make_unique<GreedyCommon>(); }
std::unique_ptr<Strategy> isolationist(bool prefer_c) { return std::make_unique<Isolationist>(prefer_c); }

NodePair isolationist_by_tables(const GameState& st, bool prefer_c) {
  std::optional<NodePair> best;
  int best_score = INT_MAX;
  bool best_common = false;
  for (const NodePair& e : canonical_edges(st.alice())) {
    const TransitionTable tab = exact_transition_table(st, e);
    int score = 0;
    for (const auto& [cell, count] : tab.counts) {
      if (cell.second == -1) score += count;
    }
    const bool common = st.is_common(e);
    const bool better = score < best_score || (prefer_c && score == best_score && common && !best_common);
    if (better) {
      best = e;
      best_score = score;
      best_common = common;
    }
  }
  return *best;
}

void register_strategy(const std::string& name, StrategyFactory factory) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  reg.factories[name] = std::move(factory);
}

std::vector<std::string> registered_strategies() {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  std::vector<std::string> names;
  for (const auto& [name, f] : reg.factories) names.push_back(name);
  return names;
}

std::unique_ptr<Strategy> make_strategy(std::string_view selector) {
  const auto colon = selector.find(':');
  const std::string name(selector.substr(0, colon));
  const std::string_view params = colon == std::string_view::npos ? std::string_view{} : selector.substr(colon + 1);
  StrategyFactory factory;
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto it = reg.factories.find(name);
    if (it == reg.factories.end()) throw DomainError("unknown strategy '" + name + "'");
    factory = it->second;
  }
  return factory(params);
}

}  // namespace pedigree
