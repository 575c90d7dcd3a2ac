#include "pedigree/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pedigree/errors.hpp"
#include "pedigree/harness.hpp"
#include "pedigree/polytope.hpp"
#include "pedigree/worked_example.hpp"

namespace pedigree {

namespace {

struct Output {
  std::string path;
  std::string format;

  void write(std::ostream& out, const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("failed writing " + path);
  }
};

void add_output(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("--out", o.path, "Write the result to this file instead of stdout");
  o.format = formats.front();
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int default_workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

nlohmann::json schemas() {
  auto obj = [](nlohmann::json props) { return nlohmann::json{{"type", "object"}, {"properties", props}}; };
  const nlohmann::json integer{{"type", "integer"}};
  const nlohmann::json number{{"type", "number"}};
  const nlohmann::json boolean{{"type", "boolean"}};
  const nlohmann::json string{{"type", "string"}};
  auto array_of = [](nlohmann::json item) { return nlohmann::json{{"type", "array"}, {"items", item}}; };
  return {
      {"version", 1},
      {"pedigree", obj({{"n", integer}, {"insertions", array_of(integer)}})},
      {"graph", obj({{"n", integer},
                     {"vertices", array_of(integer)},
                     {"edges", array_of(obj({{"u", integer}, {"v", integer}, {"tag", string}}))},
                     {"components", integer},
                     {"connected", boolean}})},
      {"trajectory", obj({{"seed", integer},
                          {"strategy", string},
                          {"n_max", integer},
                          {"S", array_of(integer)},
                          {"T", array_of(integer)},
                          {"dmoves", array_of(integer)},
                          {"isolated_at", array_of(integer)},
                          {"connected_at", {{"type", "object"}, {"additionalProperties", boolean}}},
                          {"max_simple_degree", integer},
                          {"alice", string},
                          {"bob", string}})},
      {"aggregate_csv", {{"header", csv_header()}}},
      {"polytope_report", obj({{"n", integer},
                               {"vertices", integer},
                               {"pairs", integer},
                               {"disagreements", integer},
                               {"complete", boolean},
                               {"min_degree", integer},
                               {"max_degree", integer}})},
      {"census", obj({{"n", integer},
                      {"vertices", integer},
                      {"pairs", integer},
                      {"min_degree", integer},
                      {"max_degree", integer},
                      {"min_degree_fraction", number},
                      {"complete", boolean},
                      {"degree_histogram", {{"type", "object"}}}})},
      {"transition_report", obj({{"n", integer},
                                 {"S", integer},
                                 {"T", integer},
                                 {"move", string},
                                 {"S_star", integer},
                                 {"R", integer},
                                 {"common_incident", integer},
                                 {"table", obj({{"denominator", integer}, {"cells", array_of(obj({}))}})},
                                 {"entries", array_of(obj({}))}})}};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pedigree graphs, the Alice-Bob connectivity game, and polytope adjacency checks", "ped"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string a_text, b_text;
  int workers = default_workers();
  std::function<int()> action;

  // graph
  Output graph_out;
  auto* graph = app.add_subcommand("graph", "Pedigree graph of two pedigrees");
  graph->add_option("--a", a_text, "Alice's pedigree")->required();
  graph->add_option("--b", b_text, "Bob's pedigree")->required();
  add_output(graph, graph_out, {"json", "dot", "text"});
  graph->callback([&] {
    action = [&] {
      const Pedigree a = parse_pedigree(a_text);
      const Pedigree b = parse_pedigree(b_text);
      const PedigreeGraph g = build(a, b);
      if (graph_out.format == "dot") {
        graph_out.write(out, graph_to_dot(g));
      } else if (graph_out.format == "text") {
        graph_out.write(out, narration_text(narrate_pair(a, b)));
      } else {
        graph_out.write(out, dump(graph_to_json(g)));
      }
      return kExitOk;
    };
  });

  // adjacent
  Output adj_out;
  auto* adjacent = app.add_subcommand("adjacent", "Are two pedigrees adjacent on the Pedigree polytope?");
  adjacent->add_option("--a", a_text, "First pedigree")->required();
  adjacent->add_option("--b", b_text, "Second pedigree")->required();
  add_output(adjacent, adj_out, {"json", "text"});
  adjacent->callback([&] {
    action = [&] {
      const Pedigree a = parse_pedigree(a_text);
      const Pedigree b = parse_pedigree(b_text);
      const bool adj = pedigree_adjacent(a, b);
      const int k = build(a, b).component_count();
      if (adj_out.format == "text") {
        adj_out.write(out, adj ? "adjacent\n" : "not adjacent (" + std::to_string(k) + " components)\n");
      } else {
        adj_out.write(out, dump({{"adjacent", adj}, {"components", k}}));
      }
      return kExitOk;
    };
  });

  // simulate
  Output sim_out;
  ExperimentConfig cfg;
  std::string config_path, experiment = "monte-carlo";
  std::vector<int> n_list, checkpoints;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo games and experiments");
  simulate->add_option("--config", config_path, "Experiment config file (flags override it)");
  simulate->add_option("--experiment", experiment, "monte-carlo | trajectory | dmove | t-decrease")
      ->check(CLI::IsMember({"monte-carlo", "trajectory", "dmove", "t-decrease"}))
      ->capture_default_str();
  auto* o_alice = simulate->add_option("--alice", cfg.strategy,
                                       "scripted:<pedigree> | random | greedy-common | isolationist[:prefer-c]");
  auto* o_n = simulate->add_option("--n", n_list, "Target times (comma separated)")->delimiter(',');
  auto* o_samples = simulate->add_option("--samples", cfg.samples, "Games per target");
  auto* o_seed = simulate->add_option("--seed", cfg.seed, "Master seed");
  auto* o_cp = simulate->add_option("--checkpoints", checkpoints, "Times at which T is recorded")->delimiter(',');
  auto* o_ytr = simulate->add_option("--y-truncation", cfg.y_truncation, "Count isolations up to this time");
  auto* o_tail = simulate->add_option("--tail-horizon", cfg.tail_horizon, "Play on to this time for late isolations");
  auto* o_l3 = simulate->add_option("--lemma3-rate", cfg.lemma3_rate, "Share of rounds with the attachability check");
  auto* o_l4 = simulate->add_option("--lemma4-rate", cfg.lemma4_rate, "Share of rounds with the transition-table check");
  auto* o_par = simulate->add_flag("--paranoid", cfg.paranoid, "Recompute all bookkeeping every round");
  auto* o_n0 = simulate->add_option("--n0", cfg.n0, "Start of the experiment window (dmove, t-decrease)");
  auto* o_enrich = simulate->add_option("--enrich-window", cfg.enrich_window, "Rounds of forced isolation before n0");
  simulate->add_option("--workers", workers, "Worker threads (results do not depend on it)")->capture_default_str();
  add_output(simulate, sim_out, {"csv", "json"});
  simulate->callback([&] {
    action = [&] {
      ExperimentConfig merged = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
      auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
        if (opt->count()) dst = src;
      };
      take(o_alice, merged.strategy, cfg.strategy);
      take(o_n, merged.n_targets, n_list);
      take(o_samples, merged.samples, cfg.samples);
      take(o_seed, merged.seed, cfg.seed);
      take(o_cp, merged.checkpoints, checkpoints);
      take(o_ytr, merged.y_truncation, cfg.y_truncation);
      take(o_tail, merged.tail_horizon, cfg.tail_horizon);
      take(o_l3, merged.lemma3_rate, cfg.lemma3_rate);
      take(o_l4, merged.lemma4_rate, cfg.lemma4_rate);
      take(o_par, merged.paranoid, cfg.paranoid);
      take(o_n0, merged.n0, cfg.n0);
      take(o_enrich, merged.enrich_window, cfg.enrich_window);
      if (!merged.out_csv.empty() && sim_out.path.empty() && sim_out.format == "csv") sim_out.path = merged.out_csv;
      if (!merged.out_json.empty() && sim_out.path.empty() && sim_out.format == "json") sim_out.path = merged.out_json;
      merged.validate();

      if (experiment == "trajectory") {
        const auto strategy = make_strategy(merged.strategy);
        RunOptions opts;
        opts.checkpoints = merged.checkpoints;
        opts.checks = {merged.lemma4_rate, merged.lemma3_rate, 40, merged.paranoid};
        const int n_max = *std::max_element(merged.n_targets.begin(), merged.n_targets.end());
        sim_out.write(out, dump(run_game(*strategy, n_max, merged.seed, opts).to_json()));
      } else if (experiment == "dmove") {
        sim_out.write(out, dump(dmove_experiment(merged, workers).to_json()));
      } else if (experiment == "t-decrease") {
        sim_out.write(out, dump(t_decrease_experiment(merged, workers).to_json()));
      } else {
        const Aggregate agg = monte_carlo(merged, workers);
        sim_out.write(out, sim_out.format == "json" ? dump(to_json(agg)) : to_csv(agg));
      }
      return kExitOk;
    };
  });

  // census
  Output census_out;
  int census_n = 6;
  auto* census_cmd = app.add_subcommand("census", "Degree census of the polytope skeleton (4 <= n <= 8)");
  census_cmd->add_option("--n", census_n, "Number of cities")->required();
  census_cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
  add_output(census_cmd, census_out, {"json", "text"});
  census_cmd->callback([&] {
    action = [&] {
      const SkeletonReport rep = census(census_n, workers);
      if (census_out.format == "text") {
        std::ostringstream s;
        s << "n=" << rep.n << " vertices=" << rep.vertices << " pairs=" << rep.pairs << " adjacent=" << rep.adjacent_pairs
          << " min_degree=" << rep.min_degree << " max_degree=" << rep.max_degree
          << " min_degree_fraction=" << rep.min_degree_fraction() << " complete=" << (rep.complete ? "yes" : "no")
          << "\n";
        census_out.write(out, s.str());
      } else {
        census_out.write(out, dump(rep.to_json()));
      }
      return kExitOk;
    };
  });

  // verify-polytope
  Output poly_out;
  int poly_n = 6;
  std::size_t poly_sample = 0;
  std::uint64_t poly_seed = 1;
  auto* poly = app.add_subcommand("verify-polytope", "Compare the graph criterion with exact hull adjacency");
  poly->add_option("--n", poly_n, "Number of cities (4..7)")->required();
  poly->add_option("--sample", poly_sample, "Check this many random pairs (0: all)");
  poly->add_option("--seed", poly_seed, "Seed for the pair sample");
  poly->add_option("--workers", workers, "Worker threads")->capture_default_str();
  add_output(poly, poly_out, {"json"});
  poly->callback([&] {
    action = [&] {
      const auto rep = verify_theorem2(poly_n, poly_sample ? std::optional(poly_sample) : std::nullopt, poly_seed, workers);
      poly_out.write(out, dump(rep.to_json()));
      return rep.disagreements == 0 ? kExitOk : kExitAssertion;
    };
  });

  // verify-transitions
  Output tr_out;
  std::string move_text;
  std::uint64_t tr_samples = 10000, tr_seed = 1;
  int tr_nmax = 50;
  auto* trans = app.add_subcommand("verify-transitions", "Exact one-round transition tables against the bounds");
  trans->add_option("--a", a_text, "Alice's pedigree (state mode)");
  trans->add_option("--b", b_text, "Bob's pedigree (state mode)");
  trans->add_option("--move", move_text, "Alice's edge i-j (state mode; default: every edge)");
  trans->add_option("--samples", tr_samples, "Random instances (sweep mode)")->capture_default_str();
  trans->add_option("--n-max", tr_nmax, "Largest node created (sweep mode)")->capture_default_str();
  trans->add_option("--seed", tr_seed, "Seed (sweep mode)");
  trans->add_option("--workers", workers, "Worker threads")->capture_default_str();
  add_output(trans, tr_out, {"json"});
  trans->callback([&] {
    action = [&] {
      if (a_text.empty() != b_text.empty()) throw DomainError("--a and --b go together");
      if (!a_text.empty()) {
        const GameState st = replay(parse_pedigree(a_text), parse_pedigree(b_text));
        std::vector<NodePair> moves;
        if (move_text.empty()) {
          for (Node v = 1; v <= st.time(); ++v) moves.push_back(st.alice().edge_from(v));
        } else {
          moves.push_back(parse_node_pair(move_text));
        }
        nlohmann::json reports = nlohmann::json::array();
        bool ok = true;
        for (const NodePair& m : moves) {
          const ConformanceReport rep = check_lemma4(st, m);
          ok = ok && rep.strict_pass();
          reports.push_back(rep.to_json());
        }
        tr_out.write(out, dump(reports));
        return ok ? kExitOk : kExitAssertion;
      }
      const TransitionSweep sweep = sweep_transitions(tr_samples, tr_nmax, tr_seed, workers);
      tr_out.write(out, dump(sweep.to_json()));
      return sweep.strict_violations == 0 ? kExitOk : kExitAssertion;
    };
  });

  // example
  Output ex_out;
  auto* example = app.add_subcommand("example", "Narrate the ten-city example pair round by round");
  add_output(example, ex_out, {"text", "json"});
  example->callback([&] {
    action = [&] {
      const ExamplePair pair = example_pair();
      const ExampleNarration story = narrate_pair(pair.a, pair.b);
      std::string head = "A: " + format_pedigree(pair.a) + "\nB: " + format_pedigree(pair.b) + "\n";
      if (ex_out.format == "json") {
        nlohmann::json j = narration_json(story);
        j["a"] = format_pedigree(pair.a);
        j["b"] = format_pedigree(pair.b);
        ex_out.write(out, dump(j));
      } else {
        ex_out.write(out, head + narration_text(story));
      }
      return kExitOk;
    };
  });

  // enumerate / sample
  Output enum_out;
  int enum_n = 5;
  std::string form = "idx";
  auto* enumerate = app.add_subcommand("enumerate", "List every pedigree on n cities (n <= 10)");
  enumerate->add_option("--n", enum_n, "Number of cities")->required();
  enumerate->add_option("--form", form, "idx | nu")->check(CLI::IsMember({"idx", "nu"}))->capture_default_str();
  add_output(enumerate, enum_out, {"text", "json"});

  Output sample_out;
  int sample_n = 10, sample_count = 1;
  std::uint64_t sample_seed = 1;
  auto* sample = app.add_subcommand("sample", "Draw uniformly random pedigrees");
  sample->add_option("--n", sample_n, "Number of cities")->required();
  sample->add_option("--count", sample_count, "How many")->capture_default_str();
  sample->add_option("--seed", sample_seed, "Seed");
  sample->add_option("--form", form, "idx | nu")->check(CLI::IsMember({"idx", "nu"}))->capture_default_str();
  add_output(sample, sample_out, {"text", "json"});

  auto emit = [&](const Output& o, const std::vector<Pedigree>& peds) {
    if (o.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& p : peds) arr.push_back(pedigree_to_json(p));
      o.write(out, dump(arr));
      return;
    }
    std::string text;
    for (const auto& p : peds) text += (form == "nu" ? format_pedigree_pairs(p) : format_pedigree(p)) + "\n";
    o.write(out, text);
  };
  enumerate->callback([&] {
    action = [&] {
      if (enum_n > 10) throw DomainError("enumerate supports n <= 10");
      emit(enum_out, enumerate_pedigrees(enum_n));
      return kExitOk;
    };
  });
  sample->callback([&] {
    action = [&] {
      if (sample_count < 0) throw DomainError("--count must be non-negative");
      Rng rng = make_rng(sample_seed, RngRole::kSampler);
      std::vector<Pedigree> peds;
      for (int i = 0; i < sample_count; ++i) peds.push_back(sample_uniform(sample_n, rng));
      emit(sample_out, peds);
      return kExitOk;
    };
  });

  // schema
  Output schema_out;
  auto* schema = app.add_subcommand("schema", "JSON schemas of every machine-readable output");
  add_output(schema, schema_out, {"json"});
  schema->callback([&] {
    action = [&] {
      schema_out.write(out, dump(schemas()));
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }
  if (workers < 1) throw DomainError("--workers must be at least 1");
  return action();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const InvariantViolation& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace pedigree
