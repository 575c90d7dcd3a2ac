#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace pedigree {

/// Cycle nodes are labelled 1..n.
using Node = int;

/// Unordered pair {i, j} of distinct nodes, stored smaller node first.
class NodePair {
 public:
  NodePair(Node a, Node b);

  Node lo() const noexcept { return lo_; }
  Node hi() const noexcept { return hi_; }

  bool contains(Node v) const noexcept { return v == lo_ || v == hi_; }
  bool meets(NodePair other) const noexcept {
    return contains(other.lo_) || contains(other.hi_);
  }
  /// The endpoint that is not `v`; `v` must be an endpoint.
  Node other(Node v) const noexcept { return v == lo_ ? hi_ : lo_; }

  /// Canonical text form "lo-hi".
  std::string str() const;

  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(lo_) << 32) | static_cast<std::uint32_t>(hi_);
  }

  friend auto operator<=>(const NodePair&, const NodePair&) = default;

 private:
  Node lo_;
  Node hi_;
};

/// Parses "i-j" (either order).
NodePair parse_node_pair(const std::string& text);

}  // namespace pedigree

template <>
struct std::hash<pedigree::NodePair> {
  std::size_t operator()(const pedigree::NodePair& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.key());
  }
};
