#include "pedigree/worked_example.hpp"

#include <sstream>

#include "pedigree/errors.hpp"

namespace pedigree {

ExamplePair example_pair() {
  const std::vector<NodePair> a{{1, 2}, {2, 4}, {2, 3}, {4, 5}, {3, 6}, {1, 3}, {3, 9}};
  const std::vector<NodePair> b{{1, 3}, {1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 8}, {2, 6}};
  return {pedigree_from_pairs(10, a), pedigree_from_pairs(10, b)};
}

ExampleNarration narrate_pair(const Pedigree& a, const Pedigree& b) {
  if (a.n() != b.n()) throw DomainError("pedigrees on different numbers of cities");
  const EvolvingCycle ca = cycle_from_pedigree(a);
  const EvolvingCycle cb = cycle_from_pedigree(b);
  ExampleNarration story;
  for (Node m = 4; m <= a.n(); ++m) story.rounds.push_back(narrate_round(ca, cb, m));
  story.graph = build(ca, cb);
  return story;
}

std::string narration_text(const ExampleNarration& story) {
  std::ostringstream out;
  for (const auto& r : story.rounds) {
    out << "m=" << r.m << ": nu_A={" << r.nu_a.str() << "} nu_B={" << r.nu_b.str() << "} -> "
        << (r.vertex ? "vertex" : "not a vertex (same insertion)") << "\n";
    bool any = false;
    for (const auto& c : r.checks) {
      out << "  " << tag_name(c.tag) << ": " << c.detail;
      if (c.target) {
        out << " => edge {" << *c.target << "," << r.m << "}";
        any = true;
      } else {
        out << " => no edge";
      }
      out << "\n";
    }
    if (r.vertex && !any) out << "  " << r.m << " is isolated at time " << r.m << "\n";
  }
  const auto& g = story.graph;
  out << "vertices:";
  for (Node v : g.vertices()) out << " " << v;
  out << "\nedges:";
  for (const auto& e : g.typed_edges()) out << " " << tag_name(e.tag) << "{" << e.hi << "," << e.lo << "}";
  out << "\ncomponents: " << g.component_count() << (g.connected() ? " (connected)" : " (not connected)") << "\n";
  return out.str();
}

nlohmann::json narration_json(const ExampleNarration& story) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : story.rounds) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json jc{{"rule", tag_name(c.tag)}, {"detail", c.detail}, {"target", nullptr}};
      if (c.target) jc["target"] = *c.target;
      checks.push_back(jc);
    }
    rounds.push_back({{"m", r.m}, {"nu_A", r.nu_a.str()}, {"nu_B", r.nu_b.str()}, {"vertex", r.vertex}, {"rules", checks}});
  }
  return {{"rounds", rounds}, {"graph", graph_to_json(story.graph)}};
}

}  // namespace pedigree
