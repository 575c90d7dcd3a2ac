#include <doctest.h>

#include <set>

#include "pedigree/errors.hpp"
#include "pedigree/harness.hpp"
#include "pedigree/pedigree_graph.hpp"
#include "pedigree/polytope.hpp"

using namespace pedigree;

namespace {

std::vector<PedigreeVector> all_vectors(int n) {
  std::vector<PedigreeVector> out;
  for (const auto& p : enumerate_pedigrees(n)) out.push_back(embed(p));
  return out;
}

}  // namespace

TEST_SUITE("polytope") {
  TEST_CASE("dimension and coordinates") {
    CHECK(coordinate_dimension(4) == 3);
    CHECK(coordinate_dimension(6) == 19);
    CHECK(coordinate_dimension(7) == 34);
    CHECK(coordinate_index(4, NodePair(1, 2)) == 0);
    CHECK(coordinate_index(5, NodePair(1, 2)) == 3);
    std::set<int> seen;
    for (int k = 4; k <= 7; ++k)
      for (Node i = 1; i < k; ++i)
        for (Node j = i + 1; j < k; ++j) seen.insert(coordinate_index(k, NodePair(i, j)));
    CHECK(seen.size() == 34);
    CHECK(*seen.rbegin() == 33);
  }

  TEST_CASE("embedding") {
    PedigreeVector v = embed(parse_pedigree("n:4;idx:1"));
    CHECK(v.coords == std::vector<std::uint8_t>{1, 0, 0});
    CHECK_THROWS_AS(embed(Pedigree()), DomainError);
    for (int n = 4; n <= 6; ++n) {
      auto all = all_vectors(n);
      std::set<std::vector<std::uint8_t>> distinct;
      for (const auto& x : all) {
        CHECK(x.coords.size() == static_cast<std::size_t>(coordinate_dimension(n)));
        CHECK(std::count(x.coords.begin(), x.coords.end(), 1) == n - 3);
        distinct.insert(x.coords);
      }
      CHECK(distinct.size() == all.size());
    }
  }

  TEST_CASE("n = 4 is a triangle") {
    HullOracle oracle(all_vectors(4));
    for (std::size_t u = 0; u < 3; ++u)
      for (std::size_t v = u + 1; v < 3; ++v) {
        auto cert = oracle.decide(u, v);
        CHECK(cert.adjacent);
        CHECK(oracle.verify(u, v, cert));
      }
  }

  TEST_CASE("preconditions") {
    auto all = all_vectors(5);
    HullOracle oracle(all);
    CHECK_THROWS_AS(oracle.decide(2, 2), DomainError);
    CHECK_THROWS_AS(hull_adjacent(all[0], all[0], all), DomainError);
    auto partial = all;
    partial.pop_back();
    CHECK_THROWS_AS(HullOracle{partial}, DomainError);
    auto dup = all;
    dup.back() = dup.front();
    CHECK_THROWS_AS(HullOracle{dup}, DomainError);
    CHECK_THROWS_AS(verify_theorem2(8), DomainError);
    CHECK_THROWS_AS(verify_theorem2(3), DomainError);
  }

  TEST_CASE("certificates verify and tampering is caught") {
    HullOracle oracle(all_vectors(6));
    int adjacent = 0, separated = 0;
    for (std::size_t u = 0; u < 20; ++u)
      for (std::size_t v = u + 1; v < oracle.size(); v += 7) {
        auto cert = oracle.decide(u, v);
        REQUIRE(oracle.verify(u, v, cert));
        auto bad = cert;
        if (cert.adjacent) {
          ++adjacent;
          bad.functional.assign(bad.functional.size(), mpq_class(0));
        } else {
          ++separated;
          bad.combination.front().second += mpq_class(1, 7);
        }
        CHECK_FALSE(oracle.verify(u, v, bad));
        auto flipped = cert;
        flipped.adjacent = !cert.adjacent;
        CHECK_FALSE(oracle.verify(u, v, flipped));
      }
    CHECK(adjacent > 0);
    CHECK(separated > 0);
  }

  TEST_CASE("oracle is symmetric and agrees with the graph criterion at n = 5") {
    auto peds = enumerate_pedigrees(5);
    HullOracle oracle(all_vectors(5));
    for (std::size_t u = 0; u < peds.size(); ++u)
      for (std::size_t v = u + 1; v < peds.size(); ++v) {
        bool adj = oracle.decide(u, v).adjacent;
        CHECK(adj == oracle.decide(v, u).adjacent);
        CHECK(adj == pedigree_adjacent(peds[u], peds[v]));
      }
  }

  TEST_CASE("verify_theorem2 at n = 6 and a sample at n = 7") {
    Theorem2Report r6 = verify_theorem2(6, std::nullopt, 1, 4);
    CHECK(r6.vertices == 60);
    CHECK(r6.pairs == 1770);
    CHECK(r6.disagreements == 0);
    CHECK(r6.certificates_verified == 1770);
    CHECK_FALSE(r6.complete);
    auto j = r6.to_json();
    for (const char* key : {"n", "vertices", "pairs", "disagreements", "complete", "min_degree", "max_degree"})
      CHECK(j.contains(key));

    Theorem2Report r7 = verify_theorem2(7, std::size_t{300}, 5, 4);
    CHECK(r7.vertices == 360);
    CHECK(r7.sampled);
    CHECK(r7.pairs == 300);
    CHECK(r7.total_pairs == 64620);
    CHECK(r7.disagreements == 0);
    CHECK(verify_theorem2(7, std::size_t{300}, 5, 1).to_json() == r7.to_json());
  }

  TEST_CASE("census degrees equal oracle degrees at n = 6") {
    SkeletonReport sk = census(6, 2);
    HullOracle oracle(all_vectors(6));
    std::vector<int> degree(oracle.size(), 0);
    for (std::size_t u = 0; u < oracle.size(); ++u)
      for (std::size_t v = u + 1; v < oracle.size(); ++v)
        if (oracle.decide(u, v).adjacent) {
          ++degree[u];
          ++degree[v];
        }
    CHECK(sk.degrees == degree);
    Theorem2Report r6 = verify_theorem2(6);
    CHECK(r6.min_degree == sk.min_degree);
    CHECK(r6.max_degree == sk.max_degree);
  }
}
