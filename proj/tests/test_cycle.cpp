#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pedigree/cycle.hpp"
#include "pedigree/errors.hpp"

using namespace pedigree;

namespace {

// Plain vector insertion: node k+1 goes between positions c_k - 1 and c_k.
std::vector<Node> naive_order(const Pedigree& p) {
  std::vector<Node> order{1, 2, 3};
  for (int k = 3; k < p.n(); ++k) order.insert(order.begin() + p.choice(k), k + 1);
  return order;
}

std::optional<Node> brute_inserter(const EvolvingCycle& c, NodePair pair) {
  for (Node m = 4; m <= c.size(); ++m)
    if (c.nu_pair(m) == pair) return m;
  return std::nullopt;
}

}  // namespace

TEST_SUITE("cycle") {
  TEST_CASE("triangle") {
    EvolvingCycle c;
    CHECK(c.order() == std::vector<Node>{1, 2, 3});
    CHECK(c.nu(1).empty());
    CHECK(c.nu(2) == NuRecord{1, 1});
    CHECK(c.nu_pair(3) == NodePair(1, 2));
    CHECK(c.has_edge(NodePair(1, 3)));
    CHECK(kth_edge(c, 3) == NodePair(1, 3));
  }

  TEST_CASE("documentation example order") {
    EvolvingCycle a = cycle_from_pedigree(parse_pedigree("n:10;idx:1,2,4,2,6,8,8"));
    CHECK(a.order() == std::vector<Node>{1, 4, 7, 5, 2, 6, 8, 3, 10, 9});
    CHECK(a.nu_pair(10) == NodePair(3, 9));
    CHECK(a.inserter_of(NodePair(3, 9)) == 10);
    CHECK(a.inserter_of(NodePair(1, 4)) == std::nullopt);
  }

  TEST_CASE("matches naive vector insertion on random pedigrees") {
    Rng rng = make_rng(11, RngRole::kSampler);
    for (int i = 0; i < 200; ++i) {
      Pedigree p = sample_uniform(uniform_int(rng, 3, 60), rng);
      EvolvingCycle c = cycle_from_pedigree(p);
      CHECK(c.order() == naive_order(p));
    }
  }

  TEST_CASE("edges, indices and insert_node agree") {
    Rng rng = make_rng(12, RngRole::kSampler);
    EvolvingCycle c = cycle_from_pedigree(sample_uniform(25, rng));
    auto edges = c.edges();
    REQUIRE(edges.size() == 25);
    for (int k = 1; k <= 25; ++k) {
      CHECK(kth_edge(c, k) == edges[static_cast<std::size_t>(k - 1)]);
      CHECK(c.edge_index(edges[static_cast<std::size_t>(k - 1)]) == k);
    }
    EvolvingCycle d = insert_node(c, 7);
    CHECK(d.nu_pair(26) == edges[6]);
    CHECK_THROWS_AS(c.edge_index(NodePair(1, 26)), DomainError);
  }

  TEST_CASE("stored insertion records equal the walk definition") {
    Rng rng = make_rng(13, RngRole::kSampler);
    for (int i = 0; i < 50; ++i) {
      EvolvingCycle c = cycle_from_pedigree(sample_uniform(80, rng));
      for (Node k = 3; k <= 80; ++k) CHECK(nu_by_walk(c, k) == c.nu(k));
    }
  }

  TEST_CASE("segment test locates exactly the inserted node") {
    Rng rng = make_rng(14, RngRole::kSampler);
    for (int i = 0; i < 20; ++i) {
      EvolvingCycle c = cycle_from_pedigree(sample_uniform(20, rng));
      for (Node x = 1; x <= 20; ++x)
        for (Node y = x + 1; y <= 20; ++y) {
          NodePair p(x, y);
          auto want = brute_inserter(c, p);
          CHECK(find_inserter(c, p) == want);
          CHECK(c.inserter_of(p) == want);
        }
    }
  }

  TEST_CASE("segments only grow and keep their minimum under later insertions") {
    Rng rng = make_rng(15, RngRole::kSampler);
    Pedigree p = sample_uniform(40, rng);
    EvolvingCycle full = cycle_from_pedigree(p);
    for (int m = 6; m < 40; m += 3) {
      EvolvingCycle early = full.prefix(m);
      for (Node k = 4; k <= m; ++k) {
        NodePair e = early.nu_pair(k);
        auto before = segment_between(early, e.lo(), e.hi());
        auto after = segment_between(full, e.lo(), e.hi());
        std::vector<Node> kept;
        for (Node v : after)
          if (v <= m) kept.push_back(v);
        CHECK(kept == before);
        CHECK(*std::min_element(after.begin(), after.end()) == k);
      }
    }
  }

  TEST_CASE("prefix equals the cycle of the truncated pedigree") {
    Rng rng = make_rng(16, RngRole::kSampler);
    Pedigree p = sample_uniform(30, rng);
    EvolvingCycle c = cycle_from_pedigree(p);
    for (int m = 3; m <= 30; ++m) CHECK(c.prefix(m) == cycle_from_pedigree(p.truncated(m)));
  }

  TEST_CASE("bijection on every pedigree up to n = 8") {
    for (int n = 4; n <= 8; ++n) {
      std::set<std::vector<Node>> orders;
      std::size_t count = 0;
      for_each_pedigree(n, [&](const Pedigree& p) {
        EvolvingCycle c = cycle_from_pedigree(p);
        orders.insert(c.order());
        CHECK(pedigree_from_cycle(c) == p);
        CHECK(pedigree_from_pairs(n, insertion_pairs(c)) == p);
        ++count;
      });
      CHECK(count == pedigree_count(n));
      CHECK(orders.size() == count);
    }
  }

  TEST_CASE("bijection on random n = 100 pedigrees") {
    Rng rng = make_rng(17, RngRole::kSampler);
    for (int i = 0; i < 200; ++i) {
      Pedigree p = sample_uniform(100, rng);
      CHECK(pedigree_from_cycle(cycle_from_pedigree(p)) == p);
    }
  }

  TEST_CASE("pairs that are not edges at insertion time are rejected") {
    CHECK_THROWS_AS(pedigree_from_pairs(5, {NodePair(1, 2), NodePair(1, 2)}), DomainError);
    CHECK_THROWS_AS(pedigree_from_pairs(5, {NodePair(1, 2)}), DomainError);
  }
}
