#include "mazegp/dsl/sampler.hpp"

#include "mazegp/common.hpp"

namespace mazegp::dsl {

void sample_into(const Grammar& g, TypeTag type, int max_depth, Rng& rng,
                 std::vector<RuleId>& out) {
  // Uniform over the rules of this type that can still bottom out within the
  // remaining depth. With one level left only leaves qualify.
  RuleId chosen = kNoRule;
  uint64_t seen = 0;
  for (RuleId id : g.rules_returning(type)) {
    if (g.min_depth_of_rule(id) > max_depth) continue;
    ++seen;
    if (rng.below(seen) == 0) chosen = id;
  }
  if (chosen == kNoRule) {
    fail(ErrorCode::UnsatisfiableType, std::string("no rule of type ") + to_string(type) +
                                           " fits in depth " + std::to_string(max_depth));
  }
  out.push_back(chosen);
  for (TypeTag param : g.rule(chosen).params) {
    sample_into(g, param, max_depth - 1, rng, out);
  }
}

Program sample_program(const Grammar& g, TypeTag return_type, int max_depth, Rng& rng) {
  if (max_depth < 1) fail(ErrorCode::UnsatisfiableType, "max_depth must be >= 1");
  std::vector<RuleId> nodes;
  sample_into(g, return_type, max_depth, rng, nodes);
  return Program::from_preorder(std::move(nodes), g);
}

}  // namespace mazegp::dsl
