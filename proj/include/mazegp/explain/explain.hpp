#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mazegp/dsl/interpreter.hpp"
#include "mazegp/liblearn/rewrite.hpp"

namespace mazegp::explain {

// Why one action was chosen on one observation: the cells the program read
// on its taken execution path, what they were compared against, and any
// heading checks. program_text is fully expanded, so the explanation reads
// without library definitions.
struct Explanation {
  struct CellHighlight {
    int x = 0;
    int y = 0;
    std::optional<Cell> compared;
    std::optional<bool> outcome;
  };
  struct DirectionCheck {
    Heading heading = Heading::North;
    Heading compared = Heading::North;
    bool outcome = false;
  };

  Action action = Action::Forward;
  std::vector<CellHighlight> cells;  // exactly the executed `get` calls, in order
  std::vector<DirectionCheck> direction_checks;
  std::string program_text;
};

Explanation explain_decision(const dsl::Program& p, const dsl::Grammar& g,
                             const Observation& obs, Heading heading);

inline Explanation explain_decision(const dsl::Program& p, const dsl::Grammar& g,
                                    const Observation& obs) {
  return explain_decision(p, g, obs, obs.heading);
}

// 5x5 block ('#' wall, '.' empty, 'G' goal, 'A' agent at (2,0)), inspected
// cells bracketed, then the action and the comparison list. Top row is the
// farthest-ahead row.
std::string render_ascii(const Explanation& expl, const Observation& obs);

std::string explanation_to_json(const Explanation& expl);

}  // namespace mazegp::explain
