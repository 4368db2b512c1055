#pragma once

#include <vector>

#include "mazegp/dsl/interpreter.hpp"
#include "mazegp/env/dataset.hpp"

namespace mazegp::gp {

// 1 iff the program reproduces every action of the sub-trajectory; stops at
// the first mismatch.
int rollout_match(const dsl::Program& p, const dsl::Grammar& g, const env::SubTrajectory& tau,
                  dsl::AbstractionCaches* caches = nullptr);

struct FitnessResult {
  double fitness = 0.0;
  std::vector<uint8_t> solved;  // per-trajectory mask
  int solved_count = 0;
};

// fitness = 1 / (1 + N_D - solved + w_b * size). With w_b = 0 this is the
// plain solved-count form. Always in (0, 1].
FitnessResult fitness(const dsl::Program& p, const dsl::Grammar& g, const env::Dataset& data,
                      double bloat_weight, dsl::AbstractionCaches* caches = nullptr);

}  // namespace mazegp::gp
