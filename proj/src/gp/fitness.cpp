#include "mazegp/gp/fitness.hpp"

namespace mazegp::gp {

int rollout_match(const dsl::Program& p, const dsl::Grammar& g, const env::SubTrajectory& tau,
                  dsl::AbstractionCaches* caches) {
  for (const env::StepPair& pair : tau.pairs) {
    const dsl::Value v = dsl::evaluate(p, g, pair.obs, pair.obs.heading, caches);
    if (v.as_action() != pair.action) return 0;
  }
  return 1;
}

FitnessResult fitness(const dsl::Program& p, const dsl::Grammar& g, const env::Dataset& data,
                      double bloat_weight, dsl::AbstractionCaches* caches) {
  FitnessResult r;
  r.solved.resize(data.trajectories.size(), 0);
  for (size_t i = 0; i < data.trajectories.size(); ++i) {
    const int ok = rollout_match(p, g, data.trajectories[i], caches);
    r.solved[i] = static_cast<uint8_t>(ok);
    r.solved_count += ok;
  }
  const double n = static_cast<double>(data.size());
  r.fitness = 1.0 / (1.0 + n - static_cast<double>(r.solved_count) +
                     bloat_weight * static_cast<double>(p.size()));
  return r;
}

}  // namespace mazegp::gp
