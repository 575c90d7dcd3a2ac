#include "pedigree/node_pair.hpp"

#include <charconv>
#include <limits>

#include "pedigree/errors.hpp"
#include "pedigree/rng.hpp"

namespace pedigree {

NodePair::NodePair(Node a, Node b) : lo_(a < b ? a : b), hi_(a < b ? b : a) {
  if (a == b) throw DomainError("node pair needs two distinct nodes, got " + std::to_string(a) + " twice");
  if (lo_ < 1) throw DomainError("nodes are numbered from 1");
}

std::string NodePair::str() const { return std::to_string(lo_) + "-" + std::to_string(hi_); }

namespace {

Node parse_node(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  Node v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DomainError("not a node label: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

NodePair parse_node_pair(const std::string& text) {
  auto dash = text.find('-');
  if (dash == std::string::npos) throw DomainError("expected 'i-j', got '" + text + "'");
  std::string_view sv(text);
  return NodePair(parse_node(sv.substr(0, dash)), parse_node(sv.substr(dash + 1)));
}

// --- rng -------------------------------------------------------------------

Rng make_rng(std::uint64_t seed, RngRole role) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(role)};
  return Rng(seq);
}

std::uint64_t derive_game_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

bool sampled(std::uint64_t seed, std::uint64_t round, double rate) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  // splitmix64 finaliser over (seed, round)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (round + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53 < rate;
}

}  // namespace pedigree
