#include <doctest.h>

#include <random>
#include <set>

#include "pedigree/cycle.hpp"
#include "pedigree/errors.hpp"
#include "pedigree/node_pair.hpp"
#include "pedigree/pedigree.hpp"

using namespace pedigree;

TEST_SUITE("node_pair") {
  TEST_CASE("stored smaller node first") {
    NodePair p(5, 2);
    CHECK(p.lo() == 2);
    CHECK(p.hi() == 5);
    CHECK(p == NodePair(2, 5));
    CHECK(p.str() == "2-5");
    CHECK(p.other(2) == 5);
    CHECK(p.meets(NodePair(5, 9)));
    CHECK_FALSE(p.meets(NodePair(3, 4)));
  }

  TEST_CASE("parse accepts either order and rejects junk") {
    CHECK(parse_node_pair("7-3") == NodePair(3, 7));
    CHECK(parse_node_pair(" 3-7 ") == NodePair(3, 7));
    CHECK_THROWS_AS(parse_node_pair("3-3"), DomainError);
    CHECK_THROWS_AS(parse_node_pair("0-3"), DomainError);
    CHECK_THROWS_AS(parse_node_pair("3,4"), DomainError);
    CHECK_THROWS_AS(parse_node_pair("a-4"), DomainError);
  }

  TEST_CASE("ordering matches canonical order") {
    std::set<NodePair> s{NodePair(2, 3), NodePair(1, 4), NodePair(1, 2)};
    CHECK(*s.begin() == NodePair(1, 2));
    CHECK(*s.rbegin() == NodePair(2, 3));
  }
}

TEST_SUITE("pedigree") {
  TEST_CASE("choice ranges are validated") {
    CHECK_NOTHROW(Pedigree(5, {3, 4}));
    CHECK_THROWS_AS(Pedigree(5, {4, 1}), DomainError);
    CHECK_THROWS_AS(Pedigree(5, {0, 1}), DomainError);
    CHECK_THROWS_AS(Pedigree(5, {1}), DomainError);
    CHECK_THROWS_AS(Pedigree(2, {}), DomainError);
    Pedigree p(6, {2, 3, 5});
    CHECK(p.choice(4) == 3);
    CHECK_THROWS_AS(p.choice(6), DomainError);
    CHECK(p.truncated(5) == Pedigree(5, {2, 3}));
  }

  TEST_CASE("counts") {
    CHECK(pedigree_count(3) == 1);
    CHECK(pedigree_count(4) == 3);
    CHECK(pedigree_count(8) == 2520);
    CHECK(pedigree_count(12) == 19958400);
  }

  TEST_CASE("index and pair forms round-trip") {
    Pedigree p(10, {1, 2, 4, 2, 6, 8, 8});
    CHECK(format_pedigree(p) == "n:10;idx:1,2,4,2,6,8,8");
    CHECK(parse_pedigree(format_pedigree(p)) == p);
    CHECK(parse_pedigree(format_pedigree_pairs(p)) == p);
    CHECK(parse_pedigree(pedigree_to_json(p).dump()) == p);
    CHECK(parse_pedigree("n:3;idx:") == Pedigree());
  }

  TEST_CASE("pair form of the documentation example") {
    Pedigree a = parse_pedigree("n:10;nu:1-2,2-4,2-3,4-5,3-6,1-3,3-9");
    CHECK(format_pedigree(a) == "n:10;idx:1,2,4,2,6,8,8");
    Pedigree b = parse_pedigree("n:10;nu:1-3,1-2,2-3,3-4,1-4,1-8,2-6");
    CHECK(format_pedigree(b) == "n:10;idx:3,1,3,5,7,8,3");
  }

  TEST_CASE("malformed strings are domain errors") {
    CHECK_THROWS_AS(parse_pedigree("n:5;idx:1"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("n:5;idx:1,9"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("idx:1,2"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("n:5;foo:1,2"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("n:5;nu:1-2,3-4"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("{\"n\":5}"), DomainError);
    CHECK_THROWS_AS(parse_pedigree("{broken"), DomainError);
  }

  TEST_CASE("enumeration is lexicographic and complete") {
    for (int n = 3; n <= 7; ++n) {
      auto all = enumerate_pedigrees(n);
      CHECK(all.size() == pedigree_count(n));
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      std::size_t visited = 0;
      for_each_pedigree(n, [&](const Pedigree& p) { CHECK(p == all[visited++]); });
      CHECK(visited == all.size());
    }
  }

  TEST_CASE("uniform sampling stays in range and is seed-deterministic") {
    Rng r1 = make_rng(5, RngRole::kSampler);
    Rng r2 = make_rng(5, RngRole::kSampler);
    for (int i = 0; i < 50; ++i) {
      Pedigree p = sample_uniform(30, r1);
      CHECK(p == sample_uniform(30, r2));
      for (int k = 3; k < 30; ++k) CHECK((p.choice(k) >= 1 && p.choice(k) <= k));
    }
  }

  TEST_CASE("rng streams differ by role and game index") {
    Rng a = make_rng(1, RngRole::kAlice);
    Rng b = make_rng(1, RngRole::kBob);
    CHECK(a() != b());
    CHECK(derive_game_seed(1, 100, 0) != derive_game_seed(1, 100, 1));
    CHECK(derive_game_seed(1, 100, 0) != derive_game_seed(1, 50, 0));
    CHECK(derive_game_seed(9, 1, 2) == derive_game_seed(9, 1, 2));
  }
}
