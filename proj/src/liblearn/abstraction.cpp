#include "mazegp/liblearn/abstraction.hpp"

#include <sstream>

#include "mazegp/common.hpp"

namespace mazegp::liblearn {

using dsl::Pattern;

bool alpha_equivalent(const Pattern& a, const Pattern& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  if (a.arity() != b.arity()) return false;
  std::vector<int> a_to_b(static_cast<size_t>(a.arity()), -1);
  std::vector<int> b_to_a(static_cast<size_t>(b.arity()), -1);
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    const int32_t ea = a.nodes[i];
    const int32_t eb = b.nodes[i];
    if (Pattern::is_hole(ea) != Pattern::is_hole(eb)) return false;
    if (!Pattern::is_hole(ea)) {
      if (ea != eb) return false;
      continue;
    }
    const int ka = Pattern::hole_index(ea);
    const int kb = Pattern::hole_index(eb);
    if (a.hole_types[static_cast<size_t>(ka)] != b.hole_types[static_cast<size_t>(kb)]) {
      return false;
    }
    if (a_to_b[static_cast<size_t>(ka)] == -1 && b_to_a[static_cast<size_t>(kb)] == -1) {
      a_to_b[static_cast<size_t>(ka)] = kb;
      b_to_a[static_cast<size_t>(kb)] = ka;
    } else if (a_to_b[static_cast<size_t>(ka)] != kb || b_to_a[static_cast<size_t>(kb)] != ka) {
      return false;
    }
  }
  return true;
}

dsl::RuleId register_abstraction(dsl::Grammar& g, const Abstraction& abs) {
  // Every hole must occur in the body (add_abstraction validates shape).
  std::vector<bool> seen(static_cast<size_t>(abs.arity()), false);
  for (int32_t e : abs.body.nodes) {
    if (Pattern::is_hole(e)) seen[static_cast<size_t>(Pattern::hole_index(e))] = true;
  }
  for (size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      fail(ErrorCode::Internal, abs.name + ": hole #" + std::to_string(k) + " never occurs");
    }
  }
  return g.add_abstraction(abs.name, abs.body);
}

std::vector<Abstraction> load_library(const std::string& contents, dsl::Grammar& g) {
  std::vector<Abstraction> out;
  std::istringstream in(contents);
  std::string line;
  while (std::getline(in, line)) {
    const size_t comment = line.find(';');
    if (comment != std::string::npos) line = line.substr(0, comment);
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::DataError, "library line has no '=': " + line);
    }
    Abstraction abs;
    const size_t name_end = line.find_last_not_of(" \t", eq - 1);
    abs.name = line.substr(first, name_end - first + 1);
    abs.body = dsl::parse_pattern(line.substr(eq + 1), g);
    register_abstraction(g, abs);
    out.push_back(std::move(abs));
  }
  return out;
}

std::string library_to_text(const std::vector<Abstraction>& lib, const dsl::Grammar& g) {
  std::string out;
  for (const Abstraction& abs : lib) {
    out += abs.definition(g);
    out += "\n";
  }
  return out;
}

}  // namespace mazegp::liblearn
