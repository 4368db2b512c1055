#pragma once

#include "mazegp/dsl/program.hpp"
#include "mazegp/rng.hpp"

namespace mazegp::dsl {

// Type-directed random program of the requested return type with depth at
// most max_depth. At every expansion the rule is drawn uniformly from the
// rules of the needed type that can still finish within the remaining depth
// (just the leaves when one level is left). Throws UnsatisfiableType when
// that candidate set is empty.
Program sample_program(const Grammar& g, TypeTag return_type, int max_depth, Rng& rng);

// Single expansion step, shared with the mutation operator: appends a
// sampled subtree of `type` to `out` in preorder.
void sample_into(const Grammar& g, TypeTag type, int max_depth, Rng& rng,
                 std::vector<RuleId>& out);

}  // namespace mazegp::dsl
