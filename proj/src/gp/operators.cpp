#include "mazegp/gp/operators.hpp"

#include <algorithm>
#include <unordered_set>

#include "mazegp/common.hpp"

namespace mazegp::gp {

using dsl::Grammar;
using dsl::Program;
using dsl::ProductionRule;
using dsl::RuleId;
using dsl::TypeTag;

std::vector<Individual> init_population(const GPConfig& cfg, const Grammar& g, Rng& rng) {
  std::vector<Individual> pop;
  pop.reserve(static_cast<size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    pop.push_back({dsl::sample_program(g, TypeTag::Action, cfg.max_sample_depth, rng), 0.0, {}, 0});
  }
  return pop;
}

namespace {

// Uniform draw over all rules returning `type` (one reservoir pass, no
// allocation).
RuleId uniform_rule_of_type(const Grammar& g, TypeTag type, Rng& rng) {
  const auto& candidates = g.rules_returning(type);
  return candidates[rng.index(candidates.size())];
}

// Depth of the node at `pos`, root = 1.
int depth_of(const Program& p, int pos) {
  int depth = 1;
  int cur = 0;
  while (cur != pos) {
    int c = cur + 1;
    while (!(pos >= c && pos < c + p.extent(c))) c += p.extent(c);
    cur = c;
    ++depth;
  }
  return depth;
}

}  // namespace

Program mutate(const Program& p, const Grammar& g, double p_mutation, int max_sample_depth,
               Rng& rng) {
  // Mark-then-pick-one, mirroring the crossover point selection: every node
  // is marked with p_mutation, one marked node is mutated. No mark, no
  // change.
  std::vector<int> marked;
  for (int i = 0; i < p.size(); ++i) {
    if (rng.bernoulli(p_mutation)) marked.push_back(i);
  }
  if (marked.empty()) return p;
  const int pos = marked[rng.index(marked.size())];
  const int node_depth = depth_of(p, pos);

  const ProductionRule& old_rule = g.rule(p.rule_at(pos));
  const RuleId replacement = uniform_rule_of_type(g, old_rule.ret, rng);
  const ProductionRule& new_rule = g.rule(replacement);
  bool keep_children = new_rule.arity() == old_rule.arity();
  for (int k = 0; keep_children && k < old_rule.arity(); ++k) {
    keep_children = new_rule.params[static_cast<size_t>(k)] ==
                    old_rule.params[static_cast<size_t>(k)];
  }

  std::vector<RuleId> out;
  out.reserve(static_cast<size_t>(p.size()));
  out.insert(out.end(), p.nodes().begin(), p.nodes().begin() + pos);
  out.push_back(replacement);
  if (keep_children) {
    out.insert(out.end(), p.nodes().begin() + pos + 1, p.nodes().begin() + pos + p.extent(pos));
  } else {
    // The sampling budget is relative to the node's depth, so mutation
    // keeps programs near the configured sample depth instead of splicing
    // full-depth trees onto deep leaves.
    for (TypeTag param : new_rule.params) {
      const int budget = std::max(max_sample_depth - node_depth, g.min_depth(param));
      dsl::sample_into(g, param, budget, rng, out);
    }
  }
  out.insert(out.end(), p.nodes().begin() + pos + p.extent(pos), p.nodes().end());
  return Program::from_preorder(std::move(out), g);
}

std::pair<Program, Program> crossover(const Program& a, const Program& b, const Grammar& g,
                                      double p_crossover, Rng& rng) {
  std::vector<int> marked;
  for (int i = 0; i < a.size(); ++i) {
    if (rng.bernoulli(p_crossover)) marked.push_back(i);
  }
  if (marked.empty()) return {a, b};
  const int pos_a = marked[rng.index(marked.size())];
  const TypeTag t = g.rule(a.rule_at(pos_a)).ret;

  std::vector<int> partners;
  for (int i = 0; i < b.size(); ++i) {
    if (g.rule(b.rule_at(i)).ret == t) partners.push_back(i);
  }
  if (partners.empty()) return {a, b};
  const int pos_b = partners[rng.index(partners.size())];

  auto splice = [&g](const Program& host, int at, const Program& donor, int from) {
    std::vector<RuleId> nodes;
    nodes.reserve(static_cast<size_t>(host.size()));
    nodes.insert(nodes.end(), host.nodes().begin(), host.nodes().begin() + at);
    nodes.insert(nodes.end(), donor.nodes().begin() + from,
                 donor.nodes().begin() + from + donor.extent(from));
    nodes.insert(nodes.end(), host.nodes().begin() + at + host.extent(at), host.nodes().end());
    return Program::from_preorder(std::move(nodes), g);
  };
  return {splice(a, pos_a, b, pos_b), splice(b, pos_b, a, pos_a)};
}

const Individual& tournament_select(const std::vector<Individual>& pop, int k, Rng& rng) {
  const size_t n = pop.size();
  if (k < 1 || static_cast<size_t>(k) > n) {
    fail(ErrorCode::Internal, "tournament size must be in 1..|pop|");
  }

  // Floyd's sampling: k distinct indices, O(k) state.
  std::unordered_set<size_t> chosen;
  std::vector<size_t> order;
  order.reserve(static_cast<size_t>(k));
  for (size_t i = n - static_cast<size_t>(k); i < n; ++i) {
    const size_t j = rng.index(i + 1);
    if (chosen.insert(j).second) {
      order.push_back(j);
    } else {
      chosen.insert(i);
      order.push_back(i);
    }
  }

  const Individual* best = nullptr;
  uint64_t ties = 0;
  for (size_t ix : order) {
    const Individual& cand = pop[ix];
    if (!best) {
      best = &cand;
      ties = 1;
      continue;
    }
    if (cand.fitness > best->fitness ||
        (cand.fitness == best->fitness && cand.program.size() < best->program.size())) {
      best = &cand;
      ties = 1;
    } else if (cand.fitness == best->fitness && cand.program.size() == best->program.size()) {
      ++ties;
      if (rng.below(ties) == 0) best = &cand;
    }
  }
  return *best;
}

}  // namespace mazegp::gp
