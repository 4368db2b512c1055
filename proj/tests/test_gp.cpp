#include <doctest.h>

#include <map>
#include <set>

#include "mazegp/dsl/parser.hpp"
#include "mazegp/dsl/typecheck.hpp"
#include "mazegp/gp/engine.hpp"
#include "reference_interpreter.hpp"

using namespace mazegp;
using namespace mazegp::gp;
using dsl::Grammar;
using dsl::Program;
using dsl::TypeTag;
using refimpl::random_observation;

namespace {

const char* kListing1 = "(if_action (eq-obj? (get $1 1 0) goal-obj) left-action forward-action)";

env::SubTrajectory make_tau(const std::vector<Action>& actions, Rng& rng) {
  env::SubTrajectory tau;
  for (Action a : actions) tau.pairs.push_back({random_observation(rng), a});
  return tau;
}

env::Dataset constant_dataset(Action a, int n, int length, Rng& rng) {
  env::Dataset ds;
  ds.sequence_length = length;
  for (int i = 0; i < n; ++i) {
    ds.trajectories.push_back(make_tau(std::vector<Action>(length, a), rng));
  }
  return ds;
}

// Independent Eq. 1 / Eq. 3 recomputation on top of the reference
// interpreter; the production path never touches this.
double brute_force_fitness(const Program& p, const Grammar& g, const env::Dataset& ds,
                           double w_b) {
  int solved = 0;
  for (const env::SubTrajectory& tau : ds.trajectories) {
    bool all = true;
    for (const env::StepPair& pair : tau.pairs) {
      const auto v = refimpl::ref_evaluate(p, g, pair.obs, pair.obs.heading);
      if (std::get<Action>(v) != pair.action) {
        all = false;
        break;
      }
    }
    solved += all ? 1 : 0;
  }
  return 1.0 / (1.0 + ds.size() - solved + w_b * p.size());
}

double chi_square(const std::vector<int>& counts) {
  double total = 0.0;
  for (int c : counts) total += c;
  const double expected = total / static_cast<double>(counts.size());
  double chi = 0.0;
  for (int c : counts) chi += (c - expected) * (c - expected) / expected;
  return chi;
}

}  // namespace

TEST_CASE("rollout_match basics") {
  const Grammar g = Grammar::base();
  Rng rng(1);
  const Program left = dsl::parse_program("left-action", g);

  CHECK(rollout_match(left, g, make_tau({Action::Left, Action::Left, Action::Left}, rng)) == 1);
  CHECK(rollout_match(left, g, make_tau({Action::Left, Action::Left, Action::Forward}, rng)) ==
        0);

  // a trajectory produced by executing a program is imitated by it
  const Program listing1 = dsl::parse_program(kListing1, g);
  env::SubTrajectory tau;
  for (int i = 0; i < 6; ++i) {
    const Observation obs = random_observation(rng);
    tau.pairs.push_back({obs, dsl::evaluate(listing1, g, obs).as_action()});
  }
  CHECK(rollout_match(listing1, g, tau) == 1);
}

TEST_CASE("fitness: frozen values") {
  const Grammar g = Grammar::base();
  Rng rng(2);
  const Program left = dsl::parse_program("left-action", g);

  // all four solved, no bloat weight
  auto r = fitness(left, g, constant_dataset(Action::Left, 4, 3, rng), 0.0);
  CHECK(r.fitness == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.solved_count == 4);

  // none of four solved
  r = fitness(left, g, constant_dataset(Action::Forward, 4, 3, rng), 0.0);
  CHECK(r.fitness == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.solved_count == 0);

  // N_D=10, 7 solved, size 8, w_b=0.025 -> 1/(1+3+0.2)
  const Program size8 = dsl::parse_program(
      "(if_action (not (not (eq-direction? $0 direction-0))) left-action left-action)", g);
  REQUIRE(size8.size() == 8);  // and constant-left on every input
  env::Dataset mixed;
  mixed.sequence_length = 2;
  for (int i = 0; i < 7; ++i) mixed.trajectories.push_back(make_tau({Action::Left, Action::Left}, rng));
  for (int i = 0; i < 3; ++i) mixed.trajectories.push_back(make_tau({Action::Forward, Action::Forward}, rng));
  r = fitness(size8, g, mixed, 0.025);
  CHECK(r.solved_count == 7);
  CHECK(r.fitness == doctest::Approx(1.0 / 4.2).epsilon(1e-15));
}

TEST_CASE("fitness: equals the brute-force oracle on random inputs") {
  const Grammar g = Grammar::base();
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Program p = dsl::sample_program(g, TypeTag::Action, 5, rng);
    env::Dataset ds;
    ds.sequence_length = 1 + static_cast<int>(rng.below(4));
    const int n = 1 + static_cast<int>(rng.below(10));
    for (int i = 0; i < n; ++i) {
      std::vector<Action> acts;
      for (int k = 0; k < ds.sequence_length; ++k) {
        acts.push_back(static_cast<Action>(rng.below(3)));
      }
      ds.trajectories.push_back(make_tau(acts, rng));
    }
    const double w_b = rng.unit() * 0.1;
    const auto got = fitness(p, g, ds, w_b);
    const double want = brute_force_fitness(p, g, ds, w_b);
    CHECK(got.fitness == doctest::Approx(want).epsilon(1e-12));
    CHECK(got.fitness > 0.0);
    CHECK(got.fitness <= 1.0);
  }
}

TEST_CASE("fitness: monotone dominance") {
  // fixing size, solving strictly more strictly increases fitness; fixing
  // the mask, smaller programs score at least as high
  auto f = [](int n, int solved, int size, double wb) {
    return 1.0 / (1.0 + n - solved + wb * size);
  };
  for (int solved = 0; solved < 10; ++solved) {
    CHECK(f(10, solved + 1, 7, 0.025) > f(10, solved, 7, 0.025));
    CHECK(f(10, solved, 5, 0.025) > f(10, solved, 9, 0.025));
  }
}

TEST_CASE("init_population") {
  const Grammar g = Grammar::base();
  GPConfig cfg;
  cfg.population_size = 1000;
  Rng rng(7);
  const auto pop = init_population(cfg, g, rng);
  REQUIRE(pop.size() == 1000);
  for (const Individual& ind : pop) {
    CHECK(dsl::type_check(ind.program, g).empty());
    CHECK(ind.program.depth() <= cfg.max_sample_depth);
    CHECK(ind.program.return_type(g) == TypeTag::Action);
  }

  Rng r1(9), r2(9);
  const auto a = init_population(cfg, g, r1);
  const auto b = init_population(cfg, g, r2);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].program == b[i].program);

  cfg.max_sample_depth = 1;
  Rng r3(5);
  for (const Individual& ind : init_population(cfg, g, r3)) {
    CHECK(ind.program.size() == 1);
  }
}

TEST_CASE("mutate: identity at p=0, uniform root replacement at p=1") {
  const Grammar g = Grammar::base();
  const Program listing1 = dsl::parse_program(kListing1, g);
  Rng rng(11);

  for (int i = 0; i < 50; ++i) {
    CHECK(mutate(listing1, g, 0.0, 6, rng) == listing1);
  }

  // size-1 program: the root is the only candidate; replacement is uniform
  // over the four action-typed rules
  const Program leaf = dsl::parse_program("left-action", g);
  std::map<dsl::RuleId, int> counts;
  for (int i = 0; i < 10000; ++i) {
    const Program m = mutate(leaf, g, 1.0, 6, rng);
    counts[m.rule_at(0)]++;
    CHECK(dsl::type_check(m, g).empty());
  }
  REQUIRE(counts.size() == 4);
  std::vector<int> flat;
  for (const auto& [id, n] : counts) flat.push_back(n);
  CHECK(chi_square(flat) < 11.34487);  // df=3, p=0.01
}

TEST_CASE("mutate and crossover keep programs well-typed") {
  const Grammar g = Grammar::base();
  Rng rng(13);
  for (int i = 0; i < 4000; ++i) {
    const Program a = dsl::sample_program(g, TypeTag::Action, 6, rng);
    const Program b = dsl::sample_program(g, TypeTag::Action, 6, rng);
    const auto [c1, c2] = crossover(a, b, g, 0.5, rng);
    const Program m1 = mutate(c1, g, 0.5, 6, rng);
    const Program m2 = mutate(c2, g, 0.5, 6, rng);
    CHECK(dsl::type_check(m1, g).empty());
    CHECK(dsl::type_check(m2, g).empty());
    // and they evaluate without tag faults
    const Observation obs = random_observation(rng);
    CHECK(dsl::evaluate(m1, g, obs).tag() == dsl::TypeTag::Action);
    CHECK(dsl::evaluate(m2, g, obs).tag() == dsl::TypeTag::Action);
  }
}

TEST_CASE("crossover basics") {
  const Grammar g = Grammar::base();
  Rng rng(17);
  const Program a = dsl::parse_program("left-action", g);
  const Program b = dsl::parse_program("right-action", g);

  const auto unchanged = crossover(a, b, g, 0.0, rng);
  CHECK(unchanged.first == a);
  CHECK(unchanged.second == b);

  // two constants can only swap roots
  const auto swapped = crossover(a, b, g, 1.0, rng);
  CHECK(swapped.first == b);
  CHECK(swapped.second == a);
}

TEST_CASE("tournament_select") {
  const Grammar g = Grammar::base();
  Rng rng(19);
  std::vector<Individual> pop;
  for (int i = 0; i < 50; ++i) {
    Individual ind;
    ind.program = dsl::parse_program("left-action", g);
    ind.fitness = 0.01 * i;
    pop.push_back(std::move(ind));
  }
  // k = |pop| always returns the global best
  for (int i = 0; i < 20; ++i) {
    CHECK(tournament_select(pop, 50, rng).fitness == doctest::Approx(0.49));
  }
  // k = 1 returns some member
  for (int i = 0; i < 20; ++i) {
    const double f = tournament_select(pop, 1, rng).fitness;
    CHECK(f >= 0.0);
    CHECK(f <= 0.49);
  }
  // deterministic under a fixed seed
  Rng r1(23), r2(23);
  for (int i = 0; i < 50; ++i) {
    CHECK(tournament_select(pop, 10, r1).fitness ==
          tournament_select(pop, 10, r2).fitness);
  }

  // ties prefer the smaller program
  std::vector<Individual> tied;
  Individual big;
  big.program = dsl::parse_program(kListing1, g);
  big.fitness = 0.5;
  Individual small;
  small.program = dsl::parse_program("left-action", g);
  small.fitness = 0.5;
  tied.push_back(std::move(big));
  tied.push_back(std::move(small));
  for (int i = 0; i < 20; ++i) {
    CHECK(tournament_select(tied, 2, rng).program.size() == 1);
  }
}

TEST_CASE("run_generation: constant-solvable data is solved immediately") {
  const Grammar g = Grammar::base();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Rng data_rng(seed + 100);
    GPConfig cfg;
    cfg.population_size = 200;
    cfg.tournament_size = 20;
    cfg.rng_seed = seed;
    const env::Dataset ds = constant_dataset(Action::Forward, 10, 3, data_rng);
    auto pop = init_population(cfg, g, rng);
    const auto [next, stats] = run_generation(std::move(pop), ds, cfg, g, rng);
    CHECK(stats.best_accuracy == doctest::Approx(1.0));
    CHECK(static_cast<int>(next.size()) == cfg.population_size);
  }
}

TEST_CASE("run_generation: selection only is monotone with elitism") {
  const Grammar g = Grammar::base();
  Rng rng(31);
  Rng data_rng(32);
  GPConfig cfg;
  cfg.population_size = 100;
  cfg.tournament_size = 10;
  cfg.p_mutation = 0.0;
  cfg.p_crossover = 0.0;
  env::Dataset ds;
  ds.sequence_length = 2;
  for (int i = 0; i < 10; ++i) {
    std::vector<Action> acts{static_cast<Action>(data_rng.below(3)),
                             static_cast<Action>(data_rng.below(3))};
    ds.trajectories.push_back(make_tau(acts, data_rng));
  }
  auto pop = init_population(cfg, g, rng);
  double last_best = 0.0;
  for (int gen = 0; gen < 8; ++gen) {
    auto [next, stats] = run_generation(std::move(pop), ds, cfg, g, rng);
    CHECK(stats.best_fitness >= last_best);
    last_best = stats.best_fitness;
    pop = std::move(next);
  }
}

TEST_CASE("run_generation: deterministic in the seed") {
  const Grammar g = Grammar::base();
  GPConfig cfg;
  cfg.population_size = 60;
  cfg.tournament_size = 6;
  Rng data_rng(41);
  const env::Dataset ds = constant_dataset(Action::Left, 5, 2, data_rng);

  auto run = [&](uint64_t seed) {
    Rng rng(seed);
    auto pop = init_population(cfg, g, rng);
    auto [next, stats] = run_generation(std::move(pop), ds, cfg, g, rng);
    std::vector<std::string> out;
    for (const auto& ind : next) out.push_back(dsl::print_program(ind.program, g));
    return std::pair(out, stats.best_fitness);
  };
  const auto a = run(7);
  const auto b = run(7);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  const auto c = run(8);
  CHECK(a.first != c.first);
}

TEST_CASE("evaluate_population: identical results for any worker count") {
  const Grammar g = Grammar::base();
  GPConfig cfg;
  cfg.population_size = 120;
  Rng rng(51);
  Rng data_rng(52);
  env::Dataset ds;
  ds.sequence_length = 3;
  for (int i = 0; i < 12; ++i) {
    std::vector<Action> acts;
    for (int k = 0; k < 3; ++k) acts.push_back(static_cast<Action>(data_rng.below(3)));
    ds.trajectories.push_back(make_tau(acts, data_rng));
  }
  auto pop1 = init_population(cfg, g, rng);
  auto pop3 = pop1;
  std::vector<dsl::AbstractionCaches> c1, c3;
  const auto s1 = evaluate_population(pop1, g, ds, 0.025, 1, c1);
  const auto s3 = evaluate_population(pop3, g, ds, 0.025, 3, c3);
  CHECK(s1.best_index == s3.best_index);
  CHECK(s1.best_fitness == s3.best_fitness);
  CHECK(s1.solved_union == s3.solved_union);
  for (size_t i = 0; i < pop1.size(); ++i) {
    CHECK(pop1[i].fitness == pop3[i].fitness);
    CHECK(pop1[i].solved == pop3[i].solved);
  }
}

TEST_CASE("evolve: curriculum advance, carry-over, halting, determinism") {
  // tiny curriculum over constant-action data; lengths 2 and 3 solvable
  GPConfig cfg;
  cfg.population_size = 60;
  cfg.tournament_size = 6;
  cfg.rng_seed = 3;
  cfg.use_library = false;

  Rng data_rng(61);
  std::map<int, env::Dataset> data;
  for (int length : {2, 3}) {
    data[length] = constant_dataset(Action::Forward, 8, length, data_rng);
  }
  DatasetProvider provider = [&](int length) -> std::optional<env::Dataset> {
    auto it = data.find(length);
    if (it == data.end()) return std::nullopt;
    return it->second;
  };

  // capture populations around the advance to check the carry-over
  std::map<std::pair<int, int>, std::multiset<std::string>> populations;
  const Grammar g = Grammar::base();
  EvolveObserver observer = [&](const GenerationEvent& ev) {
    std::multiset<std::string> progs;
    for (const auto& ind : *ev.population) progs.insert(dsl::print_program(ind.program, g));
    populations[{ev.sequence_length, ev.generation}] = std::move(progs);
  };

  const RunReport report = evolve(cfg, provider, 2, observer);
  CHECK_FALSE(report.halted);
  REQUIRE(report.lengths.size() == 2);
  CHECK(report.lengths[0].sequence_length == 2);
  CHECK(report.lengths[0].best_accuracy == doctest::Approx(1.0));
  CHECK(report.lengths[0].generations == 1);  // constant program in the initial population
  CHECK(report.lengths[1].sequence_length == 3);

  // population carry-over: the first evaluation at length 3 sees exactly the
  // population that finished length 2 (no library, so no rewriting)
  const int last_gen_l2 = report.lengths[0].generations;
  CHECK(populations[{3, 1}] == populations[{2, last_gen_l2}]);

  // byte-identical reports modulo wall clock
  RunReport again = evolve(cfg, provider, 2, nullptr);
  for (auto* r : {&again}) {
    for (auto& rec : r->lengths) rec.wall_clock_seconds = 0.0;
  }
  RunReport base = report;
  for (auto& rec : base.lengths) rec.wall_clock_seconds = 0.0;
  CHECK(report_to_json(base) == report_to_json(again));
}

TEST_CASE("evolve: unlearnable data halts within one budget") {
  GPConfig cfg;
  cfg.population_size = 80;
  cfg.tournament_size = 8;
  cfg.rng_seed = 5;
  cfg.max_generations_per_length = 4;

  Rng data_rng(71);
  DatasetProvider provider = [&](int length) -> std::optional<env::Dataset> {
    if (length != 50) return std::nullopt;
    env::Dataset ds;
    ds.sequence_length = 50;
    for (int i = 0; i < 10; ++i) {
      std::vector<Action> acts;
      for (int k = 0; k < 50; ++k) acts.push_back(static_cast<Action>(data_rng.below(3)));
      ds.trajectories.push_back(make_tau(acts, data_rng));
    }
    return ds;
  };
  const RunReport report = evolve(cfg, provider, 50, nullptr);
  CHECK(report.halted);
  REQUIRE(report.lengths.size() == 1);
  CHECK(report.lengths[0].generations == 4);
  CHECK(report.lengths[0].union_accuracy == doctest::Approx(0.0));
}

TEST_CASE("report json round-trip") {
  RunReport r;
  r.seed = 9;
  r.halted = false;
  r.manifest_hash = "abc";
  LengthRecord rec;
  rec.sequence_length = 3;
  rec.generations = 4;
  rec.best_accuracy = 0.75;
  rec.union_accuracy = 1.0;
  rec.best_program = "left-action";
  rec.library_added = {"fn_0=(eq-obj? (get #2 #1 #0) #3)"};
  rec.wall_clock_seconds = 1.5;
  r.lengths.push_back(rec);
  r.final_library = rec.library_added;
  r.grammar_dump = "left-action : action\n";

  const std::string text = report_to_json(r);
  const RunReport back = report_from_json(text);
  CHECK(report_to_json(back) == text);
}
