#pragma once

#include <utility>
#include <vector>

#include "mazegp/dsl/sampler.hpp"
#include "mazegp/gp/config.hpp"
#include "mazegp/gp/fitness.hpp"

namespace mazegp::gp {

struct Individual {
  dsl::Program program;
  double fitness = 0.0;
  std::vector<uint8_t> solved;
  int solved_count = 0;
};

std::vector<Individual> init_population(const GPConfig& cfg, const dsl::Grammar& g, Rng& rng);

// Every node is marked with p_mutation and one marked node is mutated (the
// same mark-then-pick-one scheme the crossover uses for its point). The
// replacement rule is drawn uniformly from the rules of the node's return
// type; children whose types line up positionally are kept, the rest are
// freshly sampled with a depth budget relative to the node.
dsl::Program mutate(const dsl::Program& p, const dsl::Grammar& g, double p_mutation,
                    int max_sample_depth, Rng& rng);

// Typed one-point crossover: nodes of `a` are marked with p_crossover each,
// one marked node is picked uniformly, and a uniformly chosen node of `b`
// with the same return type is swapped with it. No mark or no type match
// leaves both parents unchanged.
std::pair<dsl::Program, dsl::Program> crossover(const dsl::Program& a, const dsl::Program& b,
                                                const dsl::Grammar& g, double p_crossover,
                                                Rng& rng);

// k drawn without replacement; best fitness wins, ties prefer the smaller
// program, remaining ties are uniform.
const Individual& tournament_select(const std::vector<Individual>& pop, int k, Rng& rng);

}  // namespace mazegp::gp
