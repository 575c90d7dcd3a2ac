#include "pedigree/pedigree.hpp"

#include <cctype>
#include <charconv>

#include "pedigree/cycle.hpp"
#include "pedigree/errors.hpp"

namespace pedigree {

void check_city_count(int n) {
  if (n < 3) throw DomainError("a pedigree needs n >= 3 cities, got " + std::to_string(n));
}

Pedigree::Pedigree(int n, std::vector<int> choices) : n_(n), choices_(std::move(choices)) {
  check_city_count(n);
  if (choices_.size() != static_cast<std::size_t>(n - 3)) {
    throw DomainError("pedigree on " + std::to_string(n) + " cities needs " + std::to_string(n - 3) +
                      " choices, got " + std::to_string(choices_.size()));
  }
  for (std::size_t i = 0; i < choices_.size(); ++i) {
    const int k = static_cast<int>(i) + 3;
    if (choices_[i] < 1 || choices_[i] > k) {
      throw DomainError("choice c_" + std::to_string(k) + " = " + std::to_string(choices_[i]) +
                        " outside [1, " + std::to_string(k) + "]");
    }
  }
}

int Pedigree::choice(int k) const {
  if (k < 3 || k > n_ - 1) throw DomainError("no choice c_" + std::to_string(k));
  return choices_[static_cast<std::size_t>(k - 3)];
}

Pedigree Pedigree::truncated(int m) const {
  if (m < 3 || m > n_) throw DomainError("cannot truncate to " + std::to_string(m) + " cities");
  return Pedigree(m, std::vector<int>(choices_.begin(), choices_.begin() + (m - 3)));
}

std::uint64_t pedigree_count(int n) {
  check_city_count(n);
  std::uint64_t count = 1;
  for (int k = 3; k <= n - 1; ++k) count *= static_cast<std::uint64_t>(k);
  return count;
}

std::string format_pedigree(const Pedigree& p) {
  std::string out = "n:" + std::to_string(p.n()) + ";idx:";
  for (std::size_t i = 0; i < p.choices().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.choices()[i]);
  }
  return out;
}

std::string format_pedigree_pairs(const Pedigree& p) {
  std::string out = "n:" + std::to_string(p.n()) + ";nu:";
  auto pairs = insertion_pairs(cycle_from_pedigree(p));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ',';
    out += pairs[i].str();
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  if (trim(s).empty()) return parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

Pedigree parse_pedigree(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("bad pedigree JSON: ") + e.what());
    }
    return pedigree_from_json(j);
  }
  auto semi = text.find(';');
  if (semi == std::string_view::npos || text.substr(0, 2) != "n:") {
    throw DomainError("pedigree must look like 'n:<n>;idx:...' or 'n:<n>;nu:...', got '" +
                      std::string(text) + "'");
  }
  const int n = parse_int(text.substr(2, semi - 2), "city count");
  check_city_count(n);
  auto body = text.substr(semi + 1);
  if (body.substr(0, 4) == "idx:") {
    std::vector<int> choices;
    for (auto part : split(body.substr(4), ',')) choices.push_back(parse_int(part, "insertion index"));
    return Pedigree(n, std::move(choices));
  }
  if (body.substr(0, 3) == "nu:") {
    std::vector<NodePair> pairs;
    for (auto part : split(body.substr(3), ',')) pairs.push_back(parse_node_pair(std::string(part)));
    return pedigree_from_pairs(n, pairs);
  }
  throw DomainError("pedigree body must start with 'idx:' or 'nu:'");
}

nlohmann::json pedigree_to_json(const Pedigree& p) {
  return nlohmann::json{{"n", p.n()}, {"insertions", p.choices()}};
}

Pedigree pedigree_from_json(const nlohmann::json& j) {
  try {
    return Pedigree(j.at("n").get<int>(), j.at("insertions").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad pedigree JSON: ") + e.what());
  }
}

std::vector<Pedigree> enumerate_pedigrees(int n) {
  std::vector<Pedigree> out;
  out.reserve(pedigree_count(n));
  for_each_pedigree(n, [&](const Pedigree& p) { out.push_back(p); });
  return out;
}

Pedigree sample_uniform(int n, Rng& rng) {
  check_city_count(n);
  std::vector<int> choices(static_cast<std::size_t>(n - 3));
  for (int k = 3; k <= n - 1; ++k) choices[static_cast<std::size_t>(k - 3)] = uniform_int(rng, 1, k);
  return Pedigree(n, std::move(choices));
}

}  // namespace pedigree
