#pragma once

#include <string>
#include <vector>

#include "mazegp/dsl/program.hpp"

namespace mazegp::dsl {

// One ill-typed edge: the child at `path` does not return what its parent's
// signature expects. Arity violations cannot be represented in a Program
// (from_preorder rejects them), so typing is the only thing checked here.
struct TypeViolation {
  std::vector<int> path;  // child indices from the root
  TypeTag expected;
  TypeTag actual;

  std::string describe() const;
};

// Empty result == well-typed. Violations are data, not failures.
std::vector<TypeViolation> type_check(const Program& p, const Grammar& g);

}  // namespace mazegp::dsl
