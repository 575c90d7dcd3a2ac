#include <doctest.h>

#include <atomic>
#include <numeric>

#include "pedigree/errors.hpp"
#include "pedigree/harness.hpp"

using namespace pedigree;

namespace {

struct GameRecord {
  int t;
  bool connected;
  int y;
  bool tail;
  int degree;
  int past;
};

AggregateStats stats_of(const std::vector<GameRecord>& games, const std::vector<std::size_t>& pick) {
  AggregateStats s;
  s.strategy = "random";
  s.n = 50;
  for (std::size_t i : pick) {
    const auto& g = games[i];
    s.add_game(g.t, g.connected, g.y, g.tail, g.degree, g.past);
  }
  return s;
}

// Plays legally until round `bad_round`, then answers with a non-edge.
class Saboteur : public Strategy {
 public:
  explicit Saboteur(int bad_round) : bad_round_(bad_round) {}
  std::string name() const override { return "saboteur"; }
  NodePair next_move(const GameState& st, Rng&) const override {
    if (st.time() == bad_round_) return NodePair(1, st.time() + 1);
    return kth_edge(st.alice(), 1);
  }

 private:
  int bad_round_;
};

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config file round-trip") {
    ExperimentConfig cfg;
    cfg.strategy = "isolationist:prefer-c";
    cfg.n_targets = {25, 50, 100};
    cfg.samples = 12345;
    cfg.seed = 18446744073709551615ull;
    cfg.checkpoints = {25, 100};
    cfg.y_truncation = 1000;
    cfg.tail_horizon = 2000;
    cfg.lemma2 = false;
    cfg.lemma3_rate = 0.125;
    cfg.lemma4_rate = 1.0 / 3.0;
    cfg.paranoid = true;
    cfg.epsilon = 0.07;
    cfg.delta = 1.0 / 42.0;
    cfg.enrich_window = 4;
    cfg.out_csv = "out/run.csv";
    cfg.out_json = "out/run.json";
    CHECK_NOTHROW(cfg.validate());
    CHECK(parse_config(cfg.to_text()) == cfg);
    CHECK(parse_config(ExperimentConfig{}.to_text()) == ExperimentConfig{});
    CHECK(parse_config("# comment\n\nsamples = 7\n").samples == 7);
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("samples 7"), DomainError);
    CHECK_THROWS_AS(parse_config("sample = 7"), DomainError);
    CHECK_THROWS_AS(parse_config("samples = seven"), DomainError);
    CHECK_THROWS_AS(parse_config("paranoid = maybe"), DomainError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), IoError);
    ExperimentConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = ExperimentConfig{};
    cfg.checkpoints = {50};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = ExperimentConfig{};
    cfg.lemma4_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = ExperimentConfig{};
    cfg.strategy = "clever";
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("merging is associative and commutative") {
    auto alice = make_strategy("random");
    std::vector<GameRecord> games;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Trajectory tr = run_game(*alice, 50, seed);
      games.push_back({tr.t.back(), tr.t.back() == 1, static_cast<int>(tr.isolated_at.size()), seed % 7 == 0,
                       tr.max_simple_degree, static_cast<int>(seed % 3)});
    }
    std::vector<std::size_t> all(games.size());
    std::iota(all.begin(), all.end(), 0);
    AggregateStats whole = stats_of(games, all);
    Rng rng = make_rng(51, RngRole::kSampler);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> parts[3];
      for (std::size_t i : all) parts[uniform_int(rng, 0, 2)].push_back(i);
      AggregateStats a = stats_of(games, parts[0]), b = stats_of(games, parts[1]), c = stats_of(games, parts[2]);
      AggregateStats left = a;
      left.merge(b);
      left.merge(c);
      AggregateStats bc = b;
      bc.merge(c);
      AggregateStats right = a;
      right.merge(bc);
      AggregateStats swapped = c;
      swapped.merge(a);
      swapped.merge(b);
      CHECK(left == whole);
      CHECK(right == whole);
      CHECK(swapped == whole);
    }
    AggregateStats other;
    other.strategy = "greedy-common";
    other.n = 50;
    other.add_game(1, true, 2, false, 3, 1);
    CHECK_THROWS_AS(whole.merge(other), DomainError);
  }

  TEST_CASE("statistics") {
    AggregateStats s;
    s.add_game(1, true, 2, false, 4, 1);
    s.add_game(2, false, 3, true, 5, 2);
    s.add_game(3, false, 1, false, 6, 2);
    CHECK(s.connected_freq() == doctest::Approx(1.0 / 3));
    CHECK(s.mean_y() == doctest::Approx(2.0));
    CHECK(s.mean_t() == doctest::Approx(2.0));
    CHECK(s.p2_components() == doctest::Approx(0.5));
    CHECK(s.tail_games == 1);
    CHECK(s.max_simple_degree == 6);
    auto j = s.to_json();
    CHECK(j["connected_ci95"][0].get<double>() <= 1.0 / 3);
    CHECK(j["connected_ci95"][1].get<double>() >= 1.0 / 3);
  }

  TEST_CASE("results do not depend on the worker count") {
    ExperimentConfig cfg;
    cfg.strategy = "isolationist";
    cfg.n_targets = {30, 60};
    cfg.checkpoints = {30};
    cfg.samples = 300;
    cfg.seed = 77;
    cfg.lemma4_rate = 0.05;
    Aggregate one = monte_carlo(cfg, 1);
    Aggregate many = monte_carlo(cfg, 6);
    CHECK(to_csv(one) == to_csv(many));
    CHECK(to_json(one).dump() == to_json(many).dump());
    CHECK(one.at({"isolationist", 60}).samples == 300);
    CHECK(to_csv(one).rfind(csv_header(), 0) == 0);
    cfg.seed = 78;
    CHECK(to_csv(monte_carlo(cfg, 2)) != to_csv(one));
  }

  TEST_CASE("tail isolations are counted past the truncation") {
    ExperimentConfig cfg;
    cfg.n_targets = {20};
    cfg.samples = 2000;
    cfg.y_truncation = 10;
    cfg.tail_horizon = 20;
    auto st = monte_carlo(cfg, 4).at({"random", 20});
    // oblivious Alice: sum over n = 10..20 of 4/((n-1)(n-2)) = 4 (1/8 - 1/19) ~ 0.29
    CHECK(st.tail_games > 300);
    CHECK(st.tail_games < 700);
    CHECK(st.y_truncation == 10);
  }

  TEST_CASE("failures name the seed, game index and round") {
    register_strategy("saboteur", [](std::string_view) { return std::make_unique<Saboteur>(9); });
    ExperimentConfig cfg;
    cfg.strategy = "saboteur";
    cfg.n_targets = {20};
    cfg.samples = 5;
    try {
      monte_carlo(cfg, 2);
      FAIL("expected an invariant violation");
    } catch (const InvariantViolation& e) {
      std::string msg = e.what();
      CHECK(msg.find("seed=") != std::string::npos);
      CHECK(msg.find("game index 0") != std::string::npos);
      CHECK(msg.find("round 9->10") != std::string::npos);
      CHECK(msg.find("A=n:9;idx:") != std::string::npos);
    }
  }

  TEST_CASE("parallel_for visits every index once and rethrows the first error") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, 7, [&](std::uint64_t i, int) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_WITH(parallel_for(100, 4,
                                   [](std::uint64_t i, int) {
                                     if (i == 40 || i == 90) throw DomainError("index " + std::to_string(i));
                                   }),
                      "index 40");
  }

  TEST_CASE("census") {
    SkeletonReport r4 = census(4);
    CHECK(r4.vertices == 3);
    CHECK(r4.complete);
    SkeletonReport r5 = census(5, 3);
    CHECK(r5.vertices == 12);
    CHECK(r5.pairs == 66);
    CHECK(r5.degrees.size() == 12);
    std::uint64_t degree_sum = 0;
    for (int d : r5.degrees) degree_sum += static_cast<std::uint64_t>(d);
    CHECK(degree_sum == 2 * r5.adjacent_pairs);
    CHECK(r5.min_degree_fraction() == doctest::Approx(r5.min_degree / 11.0));
    CHECK_THROWS_AS(census(9), DomainError);
  }

  TEST_CASE("d-move and T-decrease experiments at small scale") {
    ExperimentConfig cfg;
    cfg.strategy = "greedy-common";
    cfg.samples = 40;
    cfg.seed = 3;
    DmoveReport d = dmove_experiment(cfg, 4);
    CHECK(d.games == 40);
    CHECK(d.qualifying > 0);
    CHECK(d.pass());
    CHECK(d.min_dmoves >= 300);
    CHECK(dmove_experiment(cfg, 1).to_json() == d.to_json());
    cfg.n0 = 500;
    CHECK_THROWS_AS(dmove_experiment(cfg), DomainError);

    cfg = ExperimentConfig{};
    cfg.samples = 30;
    TDecreaseReport t = t_decrease_experiment(cfg, 4);
    CHECK(t.natural.games == 30);
    CHECK(t.enriched.games == 30);
    CHECK(t.natural.qualifying + t.natural.excluded_t1 <= 30);
    CHECK(t.enriched.qualifying >= t.natural.qualifying);
    CHECK(t.to_json()["populations"][1]["population"] == "enriched");
  }

  TEST_CASE("transition sweep") {
    TransitionSweep sw = sweep_transitions(500, 30, 9, 3);
    CHECK(sw.instances == 500);
    CHECK(sw.c_moves + sw.d_moves == 500);
    CHECK(sw.strict_violations == 0);
    CHECK(sw.max_degree_seen <= 6);
    CHECK(sw.max_typed_past_degree <= 2);
    CHECK(sw.documented_counterexample["n"] == 4);
    CHECK(sweep_transitions(500, 30, 9, 1).to_json() == sw.to_json());
  }
}
