#include <doctest.h>

#include <set>
#include <vector>

#include "pedigree/errors.hpp"
#include "pedigree/pedigree_graph.hpp"
#include "pedigree/worked_example.hpp"

using namespace pedigree;

namespace {

// The four edge rules written directly from their definitions, on the final
// cycles; no segment tests, no incremental state.
std::set<std::tuple<Node, Node, EdgeTag>> naive_edges(const EvolvingCycle& a, const EvolvingCycle& b,
                                                      std::vector<Node>& vertices) {
  std::set<std::tuple<Node, Node, EdgeTag>> out;
  int n = a.size();
  auto vertex = [&](Node m) { return m >= 4 && a.nu_pair(m) != b.nu_pair(m); };
  for (Node m = 4; m <= n; ++m) {
    if (!vertex(m)) continue;
    vertices.push_back(m);
    NodePair na = a.nu_pair(m), nb = b.nu_pair(m);
    for (Node k = 4; k < m; ++k) {
      if (b.nu_pair(k) == na) out.insert({k, m, EdgeTag::kT1AB});
      if (a.nu_pair(k) == nb) out.insert({k, m, EdgeTag::kT1BA});
    }
    Node la = na.hi();
    if (la >= 4 && !b.nu_pair(la).meets(na)) out.insert({la, m, EdgeTag::kT2AB});
    Node lb = nb.hi();
    if (lb >= 4 && !a.nu_pair(lb).meets(nb)) out.insert({lb, m, EdgeTag::kT2BA});
  }
  return out;
}

// B copies A's insertion with probability 1/2, so many nodes are not vertices.
std::pair<Pedigree, Pedigree> correlated_pair(int n, Rng& rng) {
  Pedigree a = sample_uniform(n, rng);
  std::vector<Node> order{1, 2, 3};
  EvolvingCycle ca = cycle_from_pedigree(a);
  EvolvingCycle cb;
  for (int k = 3; k < n; ++k) {
    NodePair target = ca.nu_pair(k + 1);
    if (!cb.has_edge(target) || uniform_int(rng, 0, 1) == 0) target = kth_edge(cb, uniform_int(rng, 1, k));
    cb.insert(target);
  }
  return {a, pedigree_from_cycle(cb)};
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("documentation example") {
    ExamplePair ex = example_pair();
    PedigreeGraph g = build(ex.a, ex.b);
    CHECK(g.vertices() == std::vector<Node>{4, 5, 7, 8, 9, 10});
    std::vector<TypedEdge> want{{4, 5, EdgeTag::kT1BA}, {4, 5, EdgeTag::kT2AB}, {4, 7, EdgeTag::kT2BA},
                                {5, 7, EdgeTag::kT2AB}, {4, 9, EdgeTag::kT1AB}, {8, 9, EdgeTag::kT2BA},
                                {9, 10, EdgeTag::kT2AB}};
    std::sort(want.begin(), want.end());
    CHECK(g.typed_edges() == want);
    CHECK(g.connected());
    CHECK(pedigree_adjacent(ex.a, ex.b));

    PedigreeGraph g8 = g.restricted(8);
    CHECK(g8.has_vertex(8));
    CHECK(g8.simple_degree(8) == 0);
    CHECK(g8.component_count() == 2);
    CHECK(g.restricted(4).simple_degree(4) == 0);
  }

  TEST_CASE("example narration: every rule fails at 8, no BA edge at 10") {
    ExamplePair ex = example_pair();
    EvolvingCycle a = cycle_from_pedigree(ex.a), b = cycle_from_pedigree(ex.b);
    auto r8 = narrate_round(a, b, 8);
    CHECK(r8.vertex);
    REQUIRE(r8.checks.size() == 4);
    for (const auto& c : r8.checks) CHECK_FALSE(c.target.has_value());
    auto r10 = narrate_round(a, b, 10);
    for (const auto& c : r10.checks) {
      if (c.tag == EdgeTag::kT1BA || c.tag == EdgeTag::kT2BA || c.tag == EdgeTag::kT1AB)
        CHECK_FALSE(c.target.has_value());
      else
        CHECK(c.target == 9);
    }
    CHECK_FALSE(narrate_round(a, b, 6).vertex);
    CHECK(narrate_round(a, b, 6).checks.empty());
  }

  TEST_CASE("edge rules agree with the definitions") {
    Rng rng = make_rng(21, RngRole::kSampler);
    for (int i = 0; i < 400; ++i) {
      auto [pa, pb] = i % 2 ? correlated_pair(60, rng)
                            : std::pair{sample_uniform(60, rng), sample_uniform(60, rng)};
      EvolvingCycle a = cycle_from_pedigree(pa), b = cycle_from_pedigree(pb);
      std::vector<Node> vs;
      auto want = naive_edges(a, b, vs);
      PedigreeGraph g = build(a, b);
      CHECK(g.vertices() == vs);
      std::set<std::tuple<Node, Node, EdgeTag>> got;
      for (const auto& e : g.typed_edges()) got.insert({e.lo, e.hi, e.tag});
      CHECK(got == want);
    }
  }

  TEST_CASE("graph of the prefixes is the induced subgraph") {
    Rng rng = make_rng(22, RngRole::kSampler);
    for (int i = 0; i < 40; ++i) {
      auto [pa, pb] = correlated_pair(40, rng);
      PedigreeGraph full = build(pa, pb);
      for (int m = 4; m <= 40; m += 5) CHECK(build(pa.truncated(m), pb.truncated(m)) == full.restricted(m));
    }
  }

  TEST_CASE("component counts, degree bounds") {
    Rng rng = make_rng(23, RngRole::kSampler);
    for (int i = 0; i < 300; ++i) {
      auto [pa, pb] = i % 3 ? correlated_pair(50, rng)
                            : std::pair{sample_uniform(50, rng), sample_uniform(50, rng)};
      EvolvingCycle a = cycle_from_pedigree(pa), b = cycle_from_pedigree(pb);
      PedigreeGraph g = build(a, b);
      CHECK(component_count(a, b) == g.component_count());
      CHECK(static_cast<int>(g.components().size()) == g.component_count());
      CHECK(g.max_simple_degree() <= 6);
      CHECK(g.max_typed_past_degree() <= 2);
      for (Node v : g.vertices()) {
        CHECK(g.typed_past_degree(v, true) <= 1);
        CHECK(g.typed_past_degree(v, false) <= 1);
      }
    }
  }

  TEST_CASE("adjacency preconditions") {
    Pedigree p = parse_pedigree("n:6;idx:1,2,3");
    CHECK_THROWS_AS(pedigree_adjacent(p, p), DomainError);
    CHECK_THROWS_AS(pedigree_adjacent(p, parse_pedigree("n:5;idx:1,2")), DomainError);
    CHECK_THROWS_AS(past_edges(cycle_from_pedigree(p), cycle_from_pedigree(p), 5), DomainError);
  }

  TEST_CASE("adjacency is symmetric") {
    Rng rng = make_rng(24, RngRole::kSampler);
    for (int i = 0; i < 200; ++i) {
      auto [pa, pb] = correlated_pair(12, rng);
      if (pa == pb) continue;
      CHECK(pedigree_adjacent(pa, pb) == pedigree_adjacent(pb, pa));
    }
  }

  TEST_CASE("serialisation") {
    ExamplePair ex = example_pair();
    PedigreeGraph g = build(ex.a, ex.b);
    auto j = graph_to_json(g);
    CHECK(j["n"] == 10);
    CHECK(j["connected"] == true);
    CHECK(j["vertices"].size() == 6);
    CHECK(j["edges"].size() == 7);
    CHECK(j["edges"][0]["tag"] == "T1-BA");
    std::string dot = graph_to_dot(g);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("T2-AB") != std::string::npos);
    CHECK(parse_tag(tag_name(EdgeTag::kT2BA)) == EdgeTag::kT2BA);
    CHECK_THROWS_AS(parse_tag("T3-AB"), DomainError);
  }
}
