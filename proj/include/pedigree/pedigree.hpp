#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pedigree/rng.hpp"

namespace pedigree {

/// Insertion choices (c_3, ..., c_{n-1}) of a tour on n cities: node k+1 is
/// inserted into the c_k-th edge (counted in positive direction from node 1)
/// of the cycle on [k].
class Pedigree {
 public:
  /// The unique pedigree on 3 cities.
  Pedigree() = default;
  /// Validates 1 <= c_k <= k; throws DomainError otherwise.
  Pedigree(int n, std::vector<int> choices);

  int n() const noexcept { return n_; }
  const std::vector<int>& choices() const noexcept { return choices_; }
  /// c_k for 3 <= k <= n-1.
  int choice(int k) const;
  /// Prefix pedigree on m cities (3 <= m <= n).
  Pedigree truncated(int m) const;

  friend bool operator==(const Pedigree&, const Pedigree&) = default;
  friend auto operator<=>(const Pedigree&, const Pedigree&) = default;

 private:
  int n_ = 3;
  std::vector<int> choices_;
};

/// (n-1)!/2 for n >= 3.
std::uint64_t pedigree_count(int n);

/// Canonical index form, e.g. "n:10;idx:1,2,4,2,6,8,8".
std::string format_pedigree(const Pedigree& p);
/// Pair form listing nu(4), ..., nu(n), e.g. "n:10;nu:1-2,2-4,...".
std::string format_pedigree_pairs(const Pedigree& p);
/// Accepts the index form, the pair form, or the JSON object form.
Pedigree parse_pedigree(std::string_view text);

nlohmann::json pedigree_to_json(const Pedigree& p);
Pedigree pedigree_from_json(const nlohmann::json& j);

/// All pedigrees on n cities in lexicographic order of their choices.
std::vector<Pedigree> enumerate_pedigrees(int n);

/// Visits pedigrees in the same order as enumerate_pedigrees without storing
/// them. The visitor sees a reused choices buffer.
template <class Visitor>
void for_each_pedigree(int n, Visitor&& visit);

/// Each c_k independently uniform on [k].
Pedigree sample_uniform(int n, Rng& rng);

// ---------------------------------------------------------------------------

void check_city_count(int n);

template <class Visitor>
void for_each_pedigree(int n, Visitor&& visit) {
  check_city_count(n);
  std::vector<int> choices(static_cast<std::size_t>(n - 3), 1);
  for (;;) {
    visit(Pedigree(n, choices));
    // odometer: last position varies fastest
    int pos = static_cast<int>(choices.size()) - 1;
    while (pos >= 0 && choices[static_cast<std::size_t>(pos)] == pos + 3) {
      choices[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++choices[static_cast<std::size_t>(pos)];
  }
}

}  // namespace pedigree
