#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedigree/game.hpp"

namespace pedigree {

/// Experiment parameters. The file form is flat `key = value` text, one key
/// per line, '#' comments; keys are the field names below.
struct ExperimentConfig {
  std::string strategy = "random";
  std::vector<int> n_targets = {100};
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::vector<int> checkpoints;
  int y_truncation = 0;   // Y counts isolations at times <= this (0: up to n)
  int tail_horizon = 0;   // games run on to this time to observe late isolations
  bool lemma2 = true;     // record degree statistics
  double lemma3_rate = 0.0;
  double lemma4_rate = 0.0;
  bool paranoid = false;
  double epsilon = 0.1;
  int n0 = 900;
  int n1 = 1800;
  double a = 29.957322735539908;  // 10 ln(2 / epsilon)
  double delta = 1.0 / 42.0;
  int enrich_window = 10;
  std::string out_csv;
  std::string out_json;

  /// Throws DomainError when a field is out of range.
  void validate() const;
  std::string to_text() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(const std::string& text);
/// IoError if the file cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Counters for one (strategy, n) configuration. All fields are integer sums
/// or maxima, so merging is exact, associative and commutative.
struct AggregateStats {
  std::string strategy;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t connected = 0;
  std::uint64_t y_sum = 0;
  std::uint64_t y_sq_sum = 0;
  int y_max = 0;
  std::uint64_t t_sum = 0;
  std::map<int, std::uint64_t> t_histogram;  // T at time n
  std::map<int, std::map<int, std::uint64_t>> t_at_checkpoints;
  std::uint64_t two_components = 0;
  std::uint64_t tail_games = 0;  // games with an isolation at time >= truncation
  int tail_horizon = 0;
  int y_truncation = 0;
  int max_simple_degree = 0;
  int max_typed_past_degree = 0;
  CheckTally checks;

  void add_game(int t_final, bool connected_final, int y, bool tail, int max_degree, int max_past);
  void merge(const AggregateStats& other);

  double connected_freq() const;
  double mean_y() const;
  double mean_t() const;
  /// Share of disconnected outcomes with exactly two components (0 if none).
  double p2_components() const;
  nlohmann::json to_json() const;
  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

/// Results keyed by (strategy, n).
using Aggregate = std::map<std::pair<std::string, int>, AggregateStats>;

void merge_into(Aggregate& into, const Aggregate& from);
std::string csv_header();
std::string to_csv(const Aggregate& agg);
nlohmann::json to_json(const Aggregate& agg);

/// Plays cfg.samples independent games per n target. Game i of target n uses
/// derive_game_seed(cfg.seed, n, i), so the result is identical for any
/// number of workers. A failed assertion is rethrown with the game's seed,
/// index and round.
Aggregate monte_carlo(const ExperimentConfig& cfg, int workers = 1);

/// Skeleton of the Pedigree polytope for 4 <= n <= 8 via the pedigree-graph
/// criterion on all pairs.
struct SkeletonReport {
  int n = 0;
  std::size_t vertices = 0;
  std::uint64_t pairs = 0;
  std::uint64_t adjacent_pairs = 0;
  int min_degree = 0;
  int max_degree = 0;
  bool complete = false;
  std::vector<int> degrees;  // in enumeration order
  std::map<int, std::size_t> degree_histogram;

  double min_degree_fraction() const;
  nlohmann::json to_json() const;
};

SkeletonReport census(int n, int workers = 1);

/// Games with S_{n0} <= ln^2 n0 should have at least n0/3 d-moves
/// among the nodes n0+1..2 n0.
struct DmoveReport {
  std::string strategy;
  int n0 = 0;
  std::uint64_t games = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t failures = 0;  // qualifying games with < n0/3 d-moves
  int min_dmoves = 0;          // over qualifying games
  double mean_dmoves = 0.0;

  bool pass() const { return failures == 0; }
  nlohmann::json to_json() const;
};

DmoveReport dmove_experiment(const ExperimentConfig& cfg, int workers = 1);

/// Given T_{n0} >= 2 and S_{n0} <= ln^2 n0, T drops at some time in
/// (n0, 2 n0] with probability at least 1/7.
struct TDecreasePopulation {
  std::string label;  // "natural" or "enriched"
  std::uint64_t games = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t excluded_t1 = 0;  // S condition met but T_{n0} = 1
  std::uint64_t decreases = 0;

  double frequency() const;
  /// Three standard errors under the bound p = 1/7.
  double tolerance() const;
  /// False only when there are qualifying games and the frequency is below
  /// 1/7 - tolerance.
  bool pass() const;
  nlohmann::json to_json() const;
};

struct TDecreaseReport {
  std::string strategy;
  int n0 = 0;
  TDecreasePopulation natural;
  TDecreasePopulation enriched;  // Bob forces isolations just before n0

  nlohmann::json to_json() const;
};

TDecreaseReport t_decrease_experiment(const ExperimentConfig& cfg, int workers = 1);

/// Transition-table conformance over states reached by random play: each
/// instance plays uniform Alice against uniform Bob up to a uniform time
/// n < n_max, then checks a uniform Alice edge against the bound tables.
struct TransitionSweep {
  std::uint64_t instances = 0;
  std::uint64_t c_moves = 0;
  std::uint64_t d_moves = 0;
  std::uint64_t d_moves_t2 = 0;  // d-moves with T >= 2
  std::uint64_t strict_violations = 0;
  std::uint64_t p00_bound_exceeded = 0;
  std::uint64_t refined_bound_exceeded = 0;
  int max_degree_seen = 0;
  int max_typed_past_degree = 0;
  std::vector<nlohmann::json> violations;         // first few strict failures
  std::vector<nlohmann::json> p00_bound_examples;  // first few exceedances
  nlohmann::json documented_counterexample;       // the 4-node state

  nlohmann::json to_json() const;
};

TransitionSweep sweep_transitions(std::uint64_t instances, int n_max, std::uint64_t seed, int workers = 1);

/// The 4-node state A_4 = (1,4,2,3), B_4 = (1,2,3,4) with Alice playing {2,4}.
ConformanceReport documented_counterexample();

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// (lowest i) is rethrown after all workers stop.
void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t, int)>& fn);

}  // namespace pedigree
