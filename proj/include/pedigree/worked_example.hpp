#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pedigree/pedigree_graph.hpp"

namespace pedigree {

/// The ten-city pair used throughout the documentation, built from its
/// insertion pairs.
struct ExamplePair {
  Pedigree a;
  Pedigree b;
};

ExamplePair example_pair();

/// Round-by-round account (m = 4..n) of the vertex rule and the four edge
/// rules, followed by the final graph.
struct ExampleNarration {
  std::vector<RoundNarrative> rounds;
  PedigreeGraph graph;
};

ExampleNarration narrate_pair(const Pedigree& a, const Pedigree& b);
std::string narration_text(const ExampleNarration& story);
nlohmann::json narration_json(const ExampleNarration& story);

}  // namespace pedigree
