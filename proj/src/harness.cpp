#include "pedigree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "pedigree/errors.hpp"

namespace pedigree {

// --- config ----------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw DomainError("bad value for " + key + ": '" + value + "'");
  return out;
}

std::vector<int> parse_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number<int>(key, item));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw DomainError("bad value for " + key + ": '" + value + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (samples < 1) throw DomainError("samples must be at least 1");
  if (n_targets.empty()) throw DomainError("n_targets is empty");
  for (int n : n_targets) {
    if (n < 3) throw DomainError("n target " + std::to_string(n) + " is below 3");
  }
  for (int c : checkpoints) {
    if (std::find(n_targets.begin(), n_targets.end(), c) == n_targets.end()) {
      throw DomainError("checkpoint " + std::to_string(c) + " is not an n target");
    }
  }
  if (y_truncation < 0 || tail_horizon < 0) throw DomainError("negative truncation or horizon");
  for (double r : {lemma3_rate, lemma4_rate}) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("sampling rates must lie in [0, 1]");
  }
  if (enrich_window < 0) throw DomainError("enrich_window must be non-negative");
  make_strategy(strategy);  // throws on an unknown selector
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "strategy = " << strategy << "\n"
      << "n_targets = " << format_list(n_targets) << "\n"
      << "samples = " << samples << "\n"
      << "seed = " << seed << "\n"
      << "checkpoints = " << format_list(checkpoints) << "\n"
      << "y_truncation = " << y_truncation << "\n"
      << "tail_horizon = " << tail_horizon << "\n"
      << "lemma2 = " << (lemma2 ? "true" : "false") << "\n"
      << "lemma3_rate = " << format_double(lemma3_rate) << "\n"
      << "lemma4_rate = " << format_double(lemma4_rate) << "\n"
      << "paranoid = " << (paranoid ? "true" : "false") << "\n"
      << "epsilon = " << format_double(epsilon) << "\n"
      << "n0 = " << n0 << "\n"
      << "n1 = " << n1 << "\n"
      << "a = " << format_double(a) << "\n"
      << "delta = " << format_double(delta) << "\n"
      << "enrich_window = " << enrich_window << "\n"
      << "out_csv = " << out_csv << "\n"
      << "out_json = " << out_json << "\n";
  return out.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "strategy") cfg.strategy = value;
    else if (key == "n_targets") cfg.n_targets = parse_list(key, value);
    else if (key == "samples") cfg.samples = parse_number<std::uint64_t>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "checkpoints") cfg.checkpoints = parse_list(key, value);
    else if (key == "y_truncation") cfg.y_truncation = parse_number<int>(key, value);
    else if (key == "tail_horizon") cfg.tail_horizon = parse_number<int>(key, value);
    else if (key == "lemma2") cfg.lemma2 = parse_bool(key, value);
    else if (key == "lemma3_rate") cfg.lemma3_rate = parse_number<double>(key, value);
    else if (key == "lemma4_rate") cfg.lemma4_rate = parse_number<double>(key, value);
    else if (key == "paranoid") cfg.paranoid = parse_bool(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_number<double>(key, value);
    else if (key == "n0") cfg.n0 = parse_number<int>(key, value);
    else if (key == "n1") cfg.n1 = parse_number<int>(key, value);
    else if (key == "a") cfg.a = parse_number<double>(key, value);
    else if (key == "delta") cfg.delta = parse_number<double>(key, value);
    else if (key == "enrich_window") cfg.enrich_window = parse_number<int>(key, value);
    else if (key == "out_csv") cfg.out_csv = value;
    else if (key == "out_json") cfg.out_json = value;
    else throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// --- aggregate statistics --------------------------------------------------

void AggregateStats::add_game(int t_final, bool connected_final, int y, bool tail, int max_degree, int max_past) {
  ++samples;
  connected += connected_final ? 1 : 0;
  y_sum += static_cast<std::uint64_t>(y);
  y_sq_sum += static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(y);
  y_max = std::max(y_max, y);
  t_sum += static_cast<std::uint64_t>(t_final);
  ++t_histogram[t_final];
  two_components += t_final == 2 ? 1 : 0;
  tail_games += tail ? 1 : 0;
  max_simple_degree = std::max(max_simple_degree, max_degree);
  max_typed_past_degree = std::max(max_typed_past_degree, max_past);
}

void AggregateStats::merge(const AggregateStats& o) {
  if (samples == 0 && strategy.empty()) {
    strategy = o.strategy;
    n = o.n;
    tail_horizon = o.tail_horizon;
    y_truncation = o.y_truncation;
  } else if (o.samples > 0 && (o.strategy != strategy || o.n != n)) {
    throw DomainError("merging statistics of different configurations");
  }
  samples += o.samples;
  connected += o.connected;
  y_sum += o.y_sum;
  y_sq_sum += o.y_sq_sum;
  y_max = std::max(y_max, o.y_max);
  t_sum += o.t_sum;
  for (const auto& [t, c] : o.t_histogram) t_histogram[t] += c;
  for (const auto& [cp, hist] : o.t_at_checkpoints) {
    for (const auto& [t, c] : hist) t_at_checkpoints[cp][t] += c;
  }
  two_components += o.two_components;
  tail_games += o.tail_games;
  max_simple_degree = std::max(max_simple_degree, o.max_simple_degree);
  max_typed_past_degree = std::max(max_typed_past_degree, o.max_typed_past_degree);
  checks.merge(o.checks);
}

double AggregateStats::connected_freq() const {
  return samples ? static_cast<double>(connected) / static_cast<double>(samples) : 0.0;
}
double AggregateStats::mean_y() const {
  return samples ? static_cast<double>(y_sum) / static_cast<double>(samples) : 0.0;
}
double AggregateStats::mean_t() const {
  return samples ? static_cast<double>(t_sum) / static_cast<double>(samples) : 0.0;
}
double AggregateStats::p2_components() const {
  const std::uint64_t disconnected = samples - connected;
  return disconnected ? static_cast<double>(two_components) / static_cast<double>(disconnected) : 0.0;
}

namespace {

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Wilson score interval at 95%.
std::pair<double, double> wilson(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = boost::math::quantile(boost::math::normal(), 0.975);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

nlohmann::json histogram_json(const std::map<int, std::uint64_t>& h) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, c] : h) j[std::to_string(k)] = c;
  return j;
}

}  // namespace

nlohmann::json AggregateStats::to_json() const {
  const auto [lo, hi] = wilson(connected, samples);
  const double mean = mean_y();
  const double var = samples > 1 ? (static_cast<double>(y_sq_sum) - static_cast<double>(samples) * mean * mean) /
                                       static_cast<double>(samples - 1)
                                 : 0.0;
  nlohmann::json cps = nlohmann::json::object();
  for (const auto& [cp, hist] : t_at_checkpoints) cps[std::to_string(cp)] = histogram_json(hist);
  return {{"strategy", strategy},
          {"n", n},
          {"samples", samples},
          {"connected", connected},
          {"connected_freq", connected_freq()},
          {"connected_ci95", {lo, hi}},
          {"y_truncation", y_truncation},
          {"y_sum", y_sum},
          {"mean_Y", mean},
          {"sd_Y", std::sqrt(std::max(0.0, var))},
          {"max_Y", y_max},
          {"mean_T", mean_t()},
          {"T_histogram", histogram_json(t_histogram)},
          {"T_at_checkpoints", cps},
          {"two_components", two_components},
          {"p2_components", p2_components()},
          {"tail_horizon", tail_horizon},
          {"tail_games", tail_games},
          {"max_degree_seen", max_simple_degree},
          {"max_typed_past_degree", max_typed_past_degree},
          {"lemma4_checked", checks.lemma4_checked},
          {"lemma4_p00_bound_exceeded", checks.lemma4_report_only_exceeded},
          {"lemma3_checked", checks.lemma3_checked}};
}

void merge_into(Aggregate& into, const Aggregate& from) {
  for (const auto& [key, stats] : from) into[key].merge(stats);
}

std::string csv_header() { return "strategy,n,samples,connected_freq,mean_Y,max_degree_seen,mean_T,p2_components"; }

std::string to_csv(const Aggregate& agg) {
  std::string out = csv_header() + "\n";
  for (const auto& [key, s] : agg) {
    out += s.strategy + "," + std::to_string(s.n) + "," + std::to_string(s.samples) + "," + fixed(s.connected_freq()) +
           "," + fixed(s.mean_y()) + "," + std::to_string(s.max_simple_degree) + "," + fixed(s.mean_t()) + "," +
           fixed(s.p2_components()) + "\n";
  }
  return out;
}

nlohmann::json to_json(const Aggregate& agg) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [key, s] : agg) rows.push_back(s.to_json());
  return {{"format", "aggregate/1"}, {"rows", rows}};
}

// --- parallel driver -------------------------------------------------------

void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t, int)>& fn) {
  workers = std::max(1, workers);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::uint64_t failed_at = UINT64_MAX;
  std::exception_ptr failure;
  auto run = [&](int w) {
    for (std::uint64_t i; !stop.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < count;) {
      try {
        fn(i, w);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// --- Monte Carlo -----------------------------------------------------------

Aggregate monte_carlo(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  const auto strategy = make_strategy(cfg.strategy);
  const std::string name = strategy->name();
  workers = std::max(1, workers);
  std::vector<Aggregate> local(static_cast<std::size_t>(workers));
  const CheckRates rates{cfg.lemma4_rate, cfg.lemma3_rate, 40, cfg.paranoid};

  const std::uint64_t jobs = cfg.samples * cfg.n_targets.size();
  parallel_for(jobs, workers, [&](std::uint64_t job, int w) {
    const int n = cfg.n_targets[job / cfg.samples];
    const std::uint64_t index = job % cfg.samples;
    const std::uint64_t seed = derive_game_seed(cfg.seed, static_cast<std::uint64_t>(n), index);
    const int ytr = cfg.y_truncation > 0 ? cfg.y_truncation : n;
    const int horizon = std::max({n, ytr, cfg.tail_horizon});

    AggregateStats& stats = local[static_cast<std::size_t>(w)][{name, n}];
    if (stats.samples == 0) {
      stats.strategy = name;
      stats.n = n;
      stats.y_truncation = ytr;
      stats.tail_horizon = cfg.tail_horizon;
    }
    try {
      Game game(*strategy, seed, std::nullopt, rates);
      int t_final = 0;
      bool connected_final = false;
      int y = 0;
      bool tail = false;
      int max_past = 0;
      while (game.state().time() < horizon) {
        const RoundOutcome o = game.step();
        const int m = o.time;
        max_past = std::max(max_past, o.edges.count());
        if (o.isolated()) {
          if (m <= ytr) ++y;
          if (cfg.tail_horizon > 0 && m >= ytr) tail = true;
        }
        if (m == n) {
          t_final = game.state().t();
          connected_final = game.state().graph().connected();
        }
        for (int cp : cfg.checkpoints) {
          if (cp == m) ++stats.t_at_checkpoints[cp][game.state().t()];
        }
      }
      if (n == 3) t_final = 0;
      stats.add_game(t_final, connected_final, y, tail, game.state().graph().max_simple_degree(), max_past);
      stats.checks.merge(game.tally());
    } catch (const InvariantViolation& e) {
      throw InvariantViolation(std::string(e.what()) + " [game index " + std::to_string(index) + ", target n=" +
                               std::to_string(n) + ", strategy " + name + "]");
    }
  });

  Aggregate out;
  for (const auto& part : local) merge_into(out, part);
  return out;
}

// --- census ----------------------------------------------------------------

double SkeletonReport::min_degree_fraction() const {
  return vertices > 1 ? static_cast<double>(min_degree) / static_cast<double>(vertices - 1) : 1.0;
}

nlohmann::json SkeletonReport::to_json() const {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [d, c] : degree_histogram) hist[std::to_string(d)] = c;
  return {{"n", n},
          {"vertices", vertices},
          {"pairs", pairs},
          {"adjacent_pairs", adjacent_pairs},
          {"min_degree", min_degree},
          {"max_degree", max_degree},
          {"min_degree_fraction", min_degree_fraction()},
          {"complete", complete},
          {"degree_histogram", hist}};
}

SkeletonReport census(int n, int workers) {
  if (n < 4 || n > 8) throw DomainError("census supports 4 <= n <= 8, got " + std::to_string(n));
  const std::vector<Pedigree> peds = enumerate_pedigrees(n);
  std::vector<EvolvingCycle> cycles;
  cycles.reserve(peds.size());
  for (const auto& p : peds) cycles.push_back(cycle_from_pedigree(p));
  const std::size_t nv = cycles.size();

  workers = std::max(1, workers);
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(workers), std::vector<int>(nv, 0));
  parallel_for(nv, workers, [&](std::uint64_t i, int w) {
    auto& d = deg[static_cast<std::size_t>(w)];
    for (std::size_t j = i + 1; j < nv; ++j) {
      if (component_count(cycles[i], cycles[j]) == 1) {
        ++d[i];
        ++d[j];
      }
    }
  });

  SkeletonReport rep;
  rep.n = n;
  rep.vertices = nv;
  rep.pairs = static_cast<std::uint64_t>(nv) * (nv - 1) / 2;
  rep.degrees.assign(nv, 0);
  for (const auto& d : deg) {
    for (std::size_t i = 0; i < nv; ++i) rep.degrees[i] += d[i];
  }
  std::uint64_t deg_sum = 0;
  for (int d : rep.degrees) {
    deg_sum += static_cast<std::uint64_t>(d);
    ++rep.degree_histogram[d];
  }
  rep.adjacent_pairs = deg_sum / 2;
  rep.min_degree = *std::min_element(rep.degrees.begin(), rep.degrees.end());
  rep.max_degree = *std::max_element(rep.degrees.begin(), rep.degrees.end());
  rep.complete = rep.adjacent_pairs == rep.pairs;
  return rep;
}

// --- d-move and T-decrease experiments -------------------------------------

namespace {

constexpr std::uint64_t kStreamDmove = 0x4c35;
constexpr std::uint64_t kStreamNatural = 0x4c36;
constexpr std::uint64_t kStreamEnriched = 0x4c37;

double log_squared(int n) {
  const double l = std::log(static_cast<double>(n));
  return l * l;
}

void require_n0(int n0) {
  if (n0 < 900) throw DomainError("n0 must be at least 900, got " + std::to_string(n0));
}

}  // namespace

nlohmann::json DmoveReport::to_json() const {
  return {{"strategy", strategy},
          {"n0", n0},
          {"games", games},
          {"qualifying", qualifying},
          {"threshold", n0 / 3.0},
          {"failures", failures},
          {"min_dmoves", min_dmoves},
          {"mean_dmoves", mean_dmoves},
          {"pass", pass()}};
}

DmoveReport dmove_experiment(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  require_n0(cfg.n0);
  const auto strategy = make_strategy(cfg.strategy);
  workers = std::max(1, workers);
  struct Part {
    std::uint64_t qualifying = 0, failures = 0, dsum = 0;
    int dmin = INT32_MAX;
  };
  std::vector<Part> parts(static_cast<std::size_t>(workers));
  const int n0 = cfg.n0;
  const double s_limit = log_squared(n0);

  parallel_for(cfg.samples, workers, [&](std::uint64_t i, int w) {
    Game game(*strategy, derive_game_seed(cfg.seed, kStreamDmove, i));
    while (game.state().time() < n0) game.step();
    if (game.state().s() > s_limit) return;
    int d = 0;
    while (game.state().time() < 2 * n0) {
      if (game.step().kind == MoveKind::kDifferent) ++d;
    }
    Part& p = parts[static_cast<std::size_t>(w)];
    ++p.qualifying;
    p.dsum += static_cast<std::uint64_t>(d);
    p.dmin = std::min(p.dmin, d);
    if (3 * d < n0) ++p.failures;
  });

  DmoveReport rep;
  rep.strategy = strategy->name();
  rep.n0 = n0;
  rep.games = cfg.samples;
  std::uint64_t dsum = 0;
  int dmin = INT32_MAX;
  for (const auto& p : parts) {
    rep.qualifying += p.qualifying;
    rep.failures += p.failures;
    dsum += p.dsum;
    dmin = std::min(dmin, p.dmin);
  }
  rep.min_dmoves = rep.qualifying ? dmin : 0;
  rep.mean_dmoves = rep.qualifying ? static_cast<double>(dsum) / static_cast<double>(rep.qualifying) : 0.0;
  return rep;
}

double TDecreasePopulation::frequency() const {
  return qualifying ? static_cast<double>(decreases) / static_cast<double>(qualifying) : 0.0;
}

double TDecreasePopulation::tolerance() const {
  if (!qualifying) return 0.0;
  const double p = 1.0 / 7.0;
  return 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(qualifying));
}

bool TDecreasePopulation::pass() const { return qualifying == 0 || frequency() >= 1.0 / 7.0 - tolerance(); }

nlohmann::json TDecreasePopulation::to_json() const {
  return {{"population", label},
          {"games", games},
          {"qualifying", qualifying},
          {"excluded_T1", excluded_t1},
          {"decreases", decreases},
          {"frequency", frequency()},
          {"bound", 1.0 / 7.0},
          {"tolerance", tolerance()},
          {"pass", pass()},
          {"note", qualifying ? "" : "no qualifying games"}};
}

nlohmann::json TDecreaseReport::to_json() const {
  return {{"strategy", strategy}, {"n0", n0}, {"populations", {natural.to_json(), enriched.to_json()}}};
}

TDecreaseReport t_decrease_experiment(const ExperimentConfig& cfg, int workers) {
  cfg.validate();
  require_n0(cfg.n0);
  const auto strategy = make_strategy(cfg.strategy);
  workers = std::max(1, workers);
  const int n0 = cfg.n0;
  const double s_limit = log_squared(n0);

  auto run = [&](bool enriched) {
    TDecreasePopulation pop;
    pop.label = enriched ? "enriched" : "natural";
    pop.games = cfg.samples;
    struct Part {
      std::uint64_t qualifying = 0, excluded = 0, decreases = 0;
    };
    std::vector<Part> parts(static_cast<std::size_t>(workers));
    parallel_for(cfg.samples, workers, [&](std::uint64_t i, int w) {
      const std::uint64_t seed = derive_game_seed(cfg.seed, enriched ? kStreamEnriched : kStreamNatural, i);
      Rng alice_rng = make_rng(seed, RngRole::kAlice);
      Rng bob_rng = make_rng(seed, RngRole::kBob);
      GameState st;
      bool qualifies = false;
      bool decreased = false;
      while (st.time() <= 2 * n0) {
        const int n = st.time();
        if (n == n0) {
          if (st.s() > s_limit) return;
          if (st.t() < 2) {
            ++parts[static_cast<std::size_t>(w)].excluded;
            return;
          }
          qualifies = true;
        }
        const NodePair a = strategy->next_move(st, alice_rng);
        NodePair b = st.bob().edge_from(uniform_int(bob_rng, 1, n));
        // Before n0 an adversarial Bob answers a c-move with another common
        // edge, which creates an isolated vertex. From n0 on Bob is uniform,
        // so the conditional law after n0 is that of the natural game.
        if (enriched && n < n0 && n >= n0 - cfg.enrich_window && st.is_common(a)) {
          for (const NodePair& e : st.common()) {
            if (e != a) {
              b = e;
              break;
            }
          }
        }
        const RoundOutcome o = st.apply(a, b);
        if (qualifies && o.delta_t < 0 && o.time >= n0 + 2) decreased = true;
      }
      Part& p = parts[static_cast<std::size_t>(w)];
      ++p.qualifying;
      if (decreased) ++p.decreases;
    });
    for (const auto& p : parts) {
      pop.qualifying += p.qualifying;
      pop.excluded_t1 += p.excluded;
      pop.decreases += p.decreases;
    }
    return pop;
  };

  TDecreaseReport rep;
  rep.strategy = strategy->name();
  rep.n0 = n0;
  rep.natural = run(false);
  rep.enriched = run(true);
  return rep;
}

}  // namespace pedigree

namespace pedigree {

// --- transition-table sweep ------------------------------------------------

ConformanceReport documented_counterexample() {
  const GameState st = replay(parse_pedigree("n:4;idx:1"), parse_pedigree("n:4;idx:3"));
  return check_lemma4(st, NodePair(2, 4));
}

nlohmann::json TransitionSweep::to_json() const {
  return {{"instances", instances},
          {"c_moves", c_moves},
          {"d_moves", d_moves},
          {"d_moves_with_T_at_least_2", d_moves_t2},
          {"strict_violations", strict_violations},
          {"dmove_p00_bound_exceeded", p00_bound_exceeded},
          {"refined_dmove_bound_exceeded", refined_bound_exceeded},
          {"max_degree_seen", max_degree_seen},
          {"max_typed_past_degree", max_typed_past_degree},
          {"violations", violations},
          {"p00_bound_examples", p00_bound_examples},
          {"documented_counterexample", documented_counterexample}};
}

TransitionSweep sweep_transitions(std::uint64_t instances, int n_max, std::uint64_t seed, int workers) {
  if (n_max < 4) throw DomainError("n_max must be at least 4");
  workers = std::max(1, workers);
  constexpr std::size_t kKeep = 5;
  std::vector<TransitionSweep> parts(static_cast<std::size_t>(workers));
  // results per instance so the kept examples do not depend on scheduling
  std::vector<nlohmann::json> strict_ex(instances), p00_ex(instances);

  parallel_for(instances, workers, [&](std::uint64_t i, int w) {
    const std::uint64_t game_seed = derive_game_seed(seed, 0x4c34, i);
    Rng rng = make_rng(game_seed, RngRole::kSampler);
    const int n = uniform_int(rng, 3, n_max - 1);
    const auto alice = uniform_random();
    Game game(*alice, game_seed);
    while (game.state().time() < n) game.step();
    const GameState& st = game.state();
    const NodePair a = st.alice().edge_from(uniform_int(rng, 1, n));
    const ConformanceReport rep = check_lemma4(st, a);

    TransitionSweep& p = parts[static_cast<std::size_t>(w)];
    ++p.instances;
    p.max_degree_seen = std::max(p.max_degree_seen, st.graph().max_simple_degree());
    p.max_typed_past_degree = std::max(p.max_typed_past_degree, st.graph().max_typed_past_degree());
    if (rep.move.kind == MoveKind::kCommon) {
      ++p.c_moves;
    } else {
      ++p.d_moves;
      if (st.t() >= 2) ++p.d_moves_t2;
    }
    nlohmann::json j = rep.to_json();
    j["state"] = st.dump();
    if (!rep.strict_pass()) {
      ++p.strict_violations;
      strict_ex[i] = j;
    }
    for (const auto& f : rep.report_only_failures()) {
      if (f.formula == "(R-T+1)/n") {
        ++p.p00_bound_exceeded;
        p00_ex[i] = j;
      } else {
        ++p.refined_bound_exceeded;
      }
    }
  });

  TransitionSweep out;
  for (const auto& p : parts) {
    out.instances += p.instances;
    out.c_moves += p.c_moves;
    out.d_moves += p.d_moves;
    out.d_moves_t2 += p.d_moves_t2;
    out.strict_violations += p.strict_violations;
    out.p00_bound_exceeded += p.p00_bound_exceeded;
    out.refined_bound_exceeded += p.refined_bound_exceeded;
    out.max_degree_seen = std::max(out.max_degree_seen, p.max_degree_seen);
    out.max_typed_past_degree = std::max(out.max_typed_past_degree, p.max_typed_past_degree);
  }
  for (std::uint64_t i = 0; i < instances; ++i) {
    if (!strict_ex[i].is_null() && out.violations.size() < kKeep) out.violations.push_back(strict_ex[i]);
    if (!p00_ex[i].is_null() && out.p00_bound_examples.size() < kKeep) {
      out.p00_bound_examples.push_back(p00_ex[i]);
    }
  }
  nlohmann::json ce = documented_counterexample().to_json();
  ce["state"] = "A=n:4;idx:1 B=n:4;idx:3";
  out.documented_counterexample = ce;
  return out;
}

}  // namespace pedigree
