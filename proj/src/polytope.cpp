#include "pedigree/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "pedigree/cycle.hpp"
#include "pedigree/errors.hpp"
#include "pedigree/pedigree_graph.hpp"

namespace pedigree {

namespace {

int choose2(int m) { return m * (m - 1) / 2; }

int stage_offset(int k) {
  int off = 0;
  for (int j = 4; j < k; ++j) off += choose2(j - 1);
  return off;
}

// Phase I of the simplex method on A x = b, x >= 0, b >= 0, in exact
// arithmetic with Bland's rule. Columns are stored densely; instances here
// have at most a few dozen rows and columns.
struct PhaseOne {
  bool feasible = false;
  std::vector<mpq_class> x;  // structural solution when feasible
  std::vector<mpq_class> y;  // optimal duals of the auxiliary problem
};

PhaseOne phase_one(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b) {
  const std::size_t m = a.size();
  const std::size_t ns = m == 0 ? 0 : a[0].size();
  const std::size_t cols = ns + m;
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(cols));
  std::vector<mpq_class> rhs = b;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ns; ++j) t[i][j] = a[i][j];
    t[i][ns + i] = 1;
    basis[i] = ns + i;
  }
  auto cost = [&](std::size_t j) { return j >= ns ? 1 : 0; };

  for (;;) {
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < cols && !entering; ++j) {
      mpq_class d = cost(j);
      for (std::size_t i = 0; i < m; ++i) {
        if (cost(basis[i])) d -= t[i][j];
      }
      if (sgn(d) < 0) entering = j;
    }
    if (!entering) break;
    const std::size_t e = *entering;
    std::optional<std::size_t> leave;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][e]) <= 0) continue;
      mpq_class ratio = rhs[i] / t[i][e];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase I is bounded below by 0, so some ratio always exists.
    if (!leave) throw InvariantViolation("unbounded phase-one simplex");
    const std::size_t r = *leave;
    const mpq_class piv = t[r][e];
    for (auto& val : t[r]) val /= piv;
    rhs[r] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(t[i][e]) == 0) continue;
      const mpq_class f = t[i][e];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = e;
  }

  PhaseOne out;
  mpq_class objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cost(basis[i])) objective += rhs[i];
  }
  out.feasible = sgn(objective) == 0;
  out.x.assign(ns, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < ns) out.x[basis[i]] = rhs[i];
  }
  // y = c_B B^{-1}; B^{-1} sits in the artificial columns.
  out.y.assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    if (!cost(basis[k])) continue;
    for (std::size_t i = 0; i < m; ++i) out.y[i] += t[k][ns + i];
  }
  return out;
}

}  // namespace

int coordinate_dimension(int n) {
  if (n < 4) throw DomainError("pedigree vectors need n >= 4");
  return stage_offset(n + 1);
}

int coordinate_index(int k, NodePair pair) {
  if (k < 4 || pair.hi() >= k) throw DomainError("no coordinate (" + std::to_string(k) + ", " + pair.str() + ")");
  return stage_offset(k) + choose2(pair.hi() - 1) + pair.lo() - 1;
}

PedigreeVector embed(const Pedigree& p) {
  PedigreeVector v{p.n(), std::vector<std::uint8_t>(static_cast<std::size_t>(coordinate_dimension(p.n())), 0)};
  const EvolvingCycle c = cycle_from_pedigree(p);
  for (int k = 4; k <= p.n(); ++k) v.coords[static_cast<std::size_t>(coordinate_index(k, c.nu_pair(k)))] = 1;
  return v;
}

HullOracle::HullOracle(std::vector<PedigreeVector> all) : vertices_(std::move(all)) {
  if (vertices_.empty()) throw DomainError("empty vertex set");
  n_ = vertices_.front().n;
  dim_ = coordinate_dimension(n_);
  if (vertices_.size() != pedigree_count(n_)) {
    throw DomainError("vertex set incomplete: " + std::to_string(vertices_.size()) + " of " +
                      std::to_string(pedigree_count(n_)) + " pedigrees");
  }
  for (const auto& v : vertices_) {
    if (v.n != n_ || static_cast<int>(v.coords.size()) != dim_) throw DomainError("mixed vertex dimensions");
    std::vector<int> ones;
    for (int k = 4; k <= n_; ++k) {
      int hits = 0;
      for (int c = stage_offset(k); c < stage_offset(k + 1); ++c) {
        if (v.coords[static_cast<std::size_t>(c)]) {
          ++hits;
          ones.push_back(c);
        }
      }
      if (hits != 1) throw DomainError("not a pedigree vector: stage " + std::to_string(k) + " has " +
                                       std::to_string(hits) + " ones");
    }
    ones_.push_back(std::move(ones));
  }
  std::set<std::vector<int>> distinct(ones_.begin(), ones_.end());
  if (distinct.size() != ones_.size()) throw DomainError("duplicate vertices");
}

std::size_t HullOracle::index_of(const PedigreeVector& v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) throw DomainError("vector is not a vertex of this polytope");
  return static_cast<std::size_t>(it - vertices_.begin());
}

AdjacencyCertificate HullOracle::decide(std::size_t u, std::size_t v) const {
  if (u >= size() || v >= size()) throw DomainError("vertex index out of range");
  if (u == v) throw DomainError("adjacency of a vertex with itself");
  const auto& ou = ones_[u];
  const auto& ov = ones_[v];
  std::vector<std::size_t> diff;  // stages where u and v differ
  for (std::size_t s = 0; s < ou.size(); ++s) {
    if (ou[s] != ov[s]) diff.push_back(s);
  }

  // Vertices of the smallest cube face containing u and v.
  std::vector<std::size_t> face;
  for (std::size_t x = 0; x < size(); ++x) {
    bool in = true;
    for (std::size_t s = 0; s < ou.size() && in; ++s) {
      in = ones_[x][s] == ou[s] || ones_[x][s] == ov[s];
    }
    if (in) face.push_back(x);
  }

  // Rows: one per differing stage (u's coordinate there; v's is its
  // complement on the face), plus the weight on vertices other than u, v.
  const std::size_t m = diff.size() + 1;
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(face.size()));
  std::vector<mpq_class> b(m, 0);
  b[m - 1] = 1;
  for (std::size_t col = 0; col < face.size(); ++col) {
    const std::size_t x = face[col];
    for (std::size_t r = 0; r < diff.size(); ++r) a[r][col] = ones_[x][diff[r]] == ou[diff[r]] ? 1 : -1;
    a[m - 1][col] = (x == u || x == v) ? 0 : 1;
  }

  const PhaseOne lp = phase_one(a, b);
  AdjacencyCertificate cert;
  cert.adjacent = !lp.feasible;
  if (lp.feasible) {
    mpq_class total = 0;
    for (const auto& val : lp.x) total += val;
    for (std::size_t col = 0; col < face.size(); ++col) {
      if (sgn(lp.x[col]) > 0) cert.combination.emplace_back(face[col], lp.x[col] / total);
    }
    return cert;
  }
  mpq_class mass = 1;
  for (std::size_t r = 0; r < diff.size(); ++r) mass += abs(lp.y[r]);
  cert.functional.assign(static_cast<std::size_t>(dim_), 0);
  std::vector<char> differing(static_cast<std::size_t>(dim_), 0);
  for (std::size_t r = 0; r < diff.size(); ++r) {
    differing[static_cast<std::size_t>(ou[diff[r]])] = 1;
    differing[static_cast<std::size_t>(ov[diff[r]])] = 1;
    cert.functional[static_cast<std::size_t>(ou[diff[r]])] = -lp.y[r];
  }
  const auto& cu = vertices_[u].coords;
  for (std::size_t c = 0; c < cert.functional.size(); ++c) {
    if (!differing[c]) cert.functional[c] = cu[c] ? mpq_class(-mass) : mass;
  }
  return cert;
}

bool HullOracle::verify(std::size_t u, std::size_t v, const AdjacencyCertificate& cert) const {
  if (u == v || u >= size() || v >= size()) return false;
  if (!cert.adjacent) {
    std::vector<mpq_class> point(static_cast<std::size_t>(dim_), 0);
    mpq_class total = 0;
    bool other = false;
    for (const auto& [x, w] : cert.combination) {
      if (x >= size() || sgn(w) < 0) return false;
      total += w;
      if (x != u && x != v && sgn(w) > 0) other = true;
      for (int c : ones_[x]) point[static_cast<std::size_t>(c)] += w;
    }
    if (total != 1 || !other) return false;
    for (std::size_t c = 0; c < point.size(); ++c) {
      if (2 * point[c] != vertices_[u].coords[c] + vertices_[v].coords[c]) return false;
    }
    return true;
  }
  if (static_cast<int>(cert.functional.size()) != dim_) return false;
  auto value = [&](std::size_t x) {
    mpq_class s = 0;
    for (int c : ones_[x]) s += cert.functional[static_cast<std::size_t>(c)];
    return s;
  };
  const mpq_class hu = value(u);
  if (value(v) != hu) return false;
  for (std::size_t x = 0; x < size(); ++x) {
    if (x != u && x != v && value(x) <= hu) return false;
  }
  return true;
}

bool hull_adjacent(const PedigreeVector& u, const PedigreeVector& v, const std::vector<PedigreeVector>& all) {
  if (u == v) throw DomainError("adjacency of a vertex with itself");
  HullOracle oracle(all);
  const std::size_t iu = oracle.index_of(u);
  const std::size_t iv = oracle.index_of(v);
  const AdjacencyCertificate cert = oracle.decide(iu, iv);
  if (!oracle.verify(iu, iv, cert)) throw InvariantViolation("adjacency certificate failed verification");
  return cert.adjacent;
}

nlohmann::json Theorem2Report::to_json() const {
  nlohmann::json j{{"n", n},
                   {"vertices", vertices},
                   {"pairs", pairs},
                   {"total_pairs", total_pairs},
                   {"sampled", sampled},
                   {"disagreements", disagreements},
                   {"certificates_verified", certificates_verified},
                   {"adjacent_pairs", adjacent_pairs},
                   {"complete", complete},
                   {"min_degree", nullptr},
                   {"max_degree", nullptr}};
  if (min_degree) j["min_degree"] = *min_degree;
  if (max_degree) j["max_degree"] = *max_degree;
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& [a, b] : disagreement_examples) ex.push_back({{"a", a}, {"b", b}});
  j["disagreement_examples"] = ex;
  return j;
}

Theorem2Report verify_theorem2(int n, std::optional<std::size_t> sample, std::uint64_t seed, int workers) {
  if (n < 4 || n > 7) throw DomainError("polytope cross-check supports 4 <= n <= 7, got " + std::to_string(n));
  const std::vector<Pedigree> peds = enumerate_pedigrees(n);
  std::vector<PedigreeVector> vecs;
  for (const auto& p : peds) vecs.push_back(embed(p));
  const HullOracle oracle(vecs);
  const std::size_t nv = peds.size();

  Theorem2Report rep;
  rep.n = n;
  rep.vertices = nv;
  rep.total_pairs = nv * (nv - 1) / 2;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (sample && *sample < rep.total_pairs) {
    rep.sampled = true;
    Rng rng = make_rng(seed, RngRole::kSampler);
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    while (chosen.size() < *sample) {
      auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(nv) - 1));
      auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(nv) - 1));
      if (i == j) continue;
      chosen.insert({std::min(i, j), std::max(i, j)});
    }
    pairs.assign(chosen.begin(), chosen.end());
  } else {
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = i + 1; j < nv; ++j) pairs.emplace_back(i, j);
    }
  }
  rep.pairs = pairs.size();

  // 0 = agree non-adjacent, 1 = agree adjacent, +2 = disagreement, +4 = bad certificate
  std::vector<std::uint8_t> result(pairs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) {
      const auto [i, j] = pairs[k];
      const AdjacencyCertificate cert = oracle.decide(i, j);
      std::uint8_t r = cert.adjacent ? 1 : 0;
      if (cert.adjacent != pedigree_adjacent(peds[i], peds[j])) r |= 2;
      if (!oracle.verify(i, j, cert)) r |= 4;
      result[k] = r;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::vector<int> degree(nv, 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    if (result[k] & 4) {
      throw InvariantViolation("certificate failed for " + format_pedigree(peds[i]) + " / " + format_pedigree(peds[j]));
    }
    ++rep.certificates_verified;
    if (result[k] & 1) {
      ++rep.adjacent_pairs;
      ++degree[i];
      ++degree[j];
    }
    if (result[k] & 2) {
      ++rep.disagreements;
      if (rep.disagreement_examples.size() < 10) {
        rep.disagreement_examples.emplace_back(format_pedigree(peds[i]), format_pedigree(peds[j]));
      }
    }
  }
  rep.complete = rep.adjacent_pairs == rep.pairs;
  if (!rep.sampled) {
    rep.min_degree = *std::min_element(degree.begin(), degree.end());
    rep.max_degree = *std::max_element(degree.begin(), degree.end());
  }
  return rep;
}

}  // namespace pedigree
