#include "mazegp/explain/explain.hpp"

#include <sstream>

#include <json.hpp>

#include "mazegp/dsl/parser.hpp"

namespace mazegp::explain {

using json = nlohmann::ordered_json;

namespace {

const char* object_name(Cell c) {
  switch (c) {
    case Cell::Wall: return "wall-obj";
    case Cell::Empty: return "empty-obj";
    case Cell::Goal: return "goal-obj";
  }
  return "?";
}

}  // namespace

Explanation explain_decision(const dsl::Program& p, const dsl::Grammar& g,
                             const Observation& obs, Heading heading) {
  const dsl::Program expanded = liblearn::expand_abstractions(p, g);
  const dsl::EvalTrace trace = dsl::trace_evaluate(expanded, g, obs, heading);

  Explanation expl;
  expl.action = trace.result.as_action();
  expl.program_text = dsl::print_program(expanded, g);
  expl.cells.reserve(trace.accessed_cells.size());
  for (const auto& cell : trace.accessed_cells) {
    expl.cells.push_back({cell.x, cell.y, std::nullopt, std::nullopt});
  }
  // Attach each comparison to the first not-yet-annotated access of its
  // coordinates. Comparisons always follow from a `get`, so one exists.
  for (const auto& cmp : trace.object_comparisons) {
    for (auto& entry : expl.cells) {
      if (entry.x == cmp.x && entry.y == cmp.y && !entry.compared.has_value()) {
        entry.compared = cmp.compared;
        entry.outcome = cmp.outcome;
        break;
      }
    }
  }
  for (const auto& cmp : trace.direction_comparisons) {
    expl.direction_checks.push_back({cmp.heading, cmp.compared, cmp.outcome});
  }
  return expl;
}

std::string render_ascii(const Explanation& expl, const Observation& obs) {
  auto glyph = [](Cell c) {
    switch (c) {
      case Cell::Wall: return '#';
      case Cell::Empty: return '.';
      case Cell::Goal: return 'G';
    }
    return '?';
  };
  std::ostringstream os;
  for (int y = kViewSize - 1; y >= 0; --y) {
    for (int x = 0; x < kViewSize; ++x) {
      bool inspected = false;
      for (const auto& cell : expl.cells) {
        inspected = inspected || (cell.x == x && cell.y == y);
      }
      char c = glyph(obs.at(x, y));
      if (x == 2 && y == 0) c = 'A';
      os << (inspected ? '[' : ' ') << c << (inspected ? ']' : ' ');
    }
    os << "\n";
  }
  os << "action: " << to_string(expl.action) << "\n";
  for (const auto& cell : expl.cells) {
    os << "checked (" << cell.x << "," << cell.y << ")";
    if (cell.compared.has_value()) {
      os << " == " << object_name(*cell.compared) << " -> "
         << (*cell.outcome ? "true" : "false");
    }
    os << "\n";
  }
  for (const auto& check : expl.direction_checks) {
    os << "heading " << to_string(check.heading) << " == " << to_string(check.compared) << " -> "
       << (check.outcome ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string explanation_to_json(const Explanation& expl) {
  json j;
  j["action"] = to_string(expl.action);
  json cells = json::array();
  for (const auto& cell : expl.cells) {
    json e;
    e["x"] = cell.x;
    e["y"] = cell.y;
    if (cell.compared.has_value()) {
      e["compared"] = object_name(*cell.compared);
      e["outcome"] = *cell.outcome;
    }
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  if (!expl.direction_checks.empty()) {
    json checks = json::array();
    for (const auto& check : expl.direction_checks) {
      json e;
      e["heading"] = to_string(check.heading);
      e["compared"] = to_string(check.compared);
      e["outcome"] = check.outcome;
      checks.push_back(std::move(e));
    }
    j["direction_checks"] = std::move(checks);
  }
  j["program"] = expl.program_text;
  return j.dump(2);
}

}  // namespace mazegp::explain
