#pragma once

#include <vector>

#include "mazegp/dsl/program.hpp"

namespace mazegp::liblearn {

// Replaces every non-overlapping occurrence of the abstraction's body
// (matched greedily top-down) with a call to `abstraction_rule`. Semantics
// are preserved exactly; the result never grows.
dsl::Program rewrite_program(const dsl::Program& p, const dsl::Grammar& g,
                             dsl::RuleId abstraction_rule);

std::vector<dsl::Program> rewrite_corpus(const std::vector<dsl::Program>& corpus,
                                         const dsl::Grammar& g, dsl::RuleId abstraction_rule);

// Recursively inlines every abstraction call; the result uses base rules
// only and evaluates identically.
dsl::Program expand_abstractions(const dsl::Program& p, const dsl::Grammar& g);

}  // namespace mazegp::liblearn
