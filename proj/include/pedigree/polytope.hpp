#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "pedigree/node_pair.hpp"
#include "pedigree/pedigree.hpp"

namespace pedigree {

/// Stage-indicator vector: coordinate (k, {i,j}) for 4 <= k <= n and
/// {i,j} within [k-1] is 1 iff nu(k) = {i,j}.
struct PedigreeVector {
  int n = 3;
  std::vector<std::uint8_t> coords;

  friend bool operator==(const PedigreeVector&, const PedigreeVector&) = default;
};

/// D_n = sum over k = 4..n of C(k-1, 2).
int coordinate_dimension(int n);
/// Position of coordinate (k, pair) in a PedigreeVector.
int coordinate_index(int k, NodePair pair);
/// DomainError for n < 4.
PedigreeVector embed(const Pedigree& p);

/// Outcome of the adjacency decision for vertices u and v.
///
/// Not adjacent: `combination` lists convex multipliers (vertex index,
/// weight) that reproduce (u+v)/2 and put weight on some other vertex.
/// Adjacent: `functional` h satisfies h.u = h.v < h.w for every other vertex
/// w, so {u, v} is an edge (a face exposed by h).
struct AdjacencyCertificate {
  bool adjacent = false;
  std::vector<std::pair<std::size_t, mpq_class>> combination;
  std::vector<mpq_class> functional;
};

/// Exact adjacency oracle over the vertex set of the Pedigree polytope.
///
/// A pair u, v is non-adjacent iff the midpoint has a convex representation
/// using some vertex other than u, v. Any such representation lives in the
/// smallest cube face containing u and v, so only the pedigrees whose stage
/// choices agree with u or v stage by stage are passed to an exact rational
/// Phase-I simplex (Bland's rule). Infeasibility yields a Farkas vector,
/// which is lifted back to a separating functional in full dimension.
class HullOracle {
 public:
  /// `all` must be every pedigree vector for one n; DomainError otherwise.
  explicit HullOracle(std::vector<PedigreeVector> all);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const PedigreeVector& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t index_of(const PedigreeVector& v) const;

  AdjacencyCertificate decide(std::size_t u, std::size_t v) const;
  /// Re-checks a certificate against the full vertex set in exact arithmetic.
  bool verify(std::size_t u, std::size_t v, const AdjacencyCertificate& cert) const;

 private:
  int n_;
  int dim_;
  std::vector<PedigreeVector> vertices_;
  std::vector<std::vector<int>> ones_;  // coordinates equal to 1, per vertex
};

/// Convenience wrapper; builds an oracle on `all` for a single query.
bool hull_adjacent(const PedigreeVector& u, const PedigreeVector& v, const std::vector<PedigreeVector>& all);

struct Theorem2Report {
  int n = 0;
  std::size_t vertices = 0;
  std::size_t pairs = 0;  // pairs checked
  std::size_t total_pairs = 0;
  bool sampled = false;
  std::size_t disagreements = 0;
  std::size_t certificates_verified = 0;
  std::size_t adjacent_pairs = 0;
  bool complete = false;       // every checked pair adjacent
  std::optional<int> min_degree;  // skeleton degrees, only for full runs
  std::optional<int> max_degree;
  std::vector<std::pair<std::string, std::string>> disagreement_examples;

  nlohmann::json to_json() const;
};

/// Cross-checks pedigree_adjacent against the hull oracle for 4 <= n <= 7,
/// on all pairs or on `sample` seeded random distinct pairs.
Theorem2Report verify_theorem2(int n, std::optional<std::size_t> sample = std::nullopt, std::uint64_t seed = 1,
                               int workers = 1);

}  // namespace pedigree
