#include "mazegp/gp/engine.hpp"

#include <chrono>
#include <thread>

#include <json.hpp>

#include "mazegp/common.hpp"
#include "mazegp/liblearn/miner.hpp"
#include "mazegp/liblearn/rewrite.hpp"

namespace mazegp::gp {

using json = nlohmann::ordered_json;

GenerationStats evaluate_population(std::vector<Individual>& pop, const dsl::Grammar& g,
                                    const env::Dataset& data, double bloat_weight, int workers,
                                    std::vector<dsl::AbstractionCaches>& worker_caches) {
  const size_t n = pop.size();
  const size_t w = static_cast<size_t>(std::max(1, workers));
  if (worker_caches.size() < w) worker_caches.resize(w);

  auto score_range = [&](size_t begin, size_t end, size_t worker) {
    for (size_t i = begin; i < end; ++i) {
      FitnessResult r = fitness(pop[i].program, g, data, bloat_weight, &worker_caches[worker]);
      pop[i].fitness = r.fitness;
      pop[i].solved = std::move(r.solved);
      pop[i].solved_count = r.solved_count;
    }
  };

  if (w <= 1 || n < 2 * w) {
    score_range(0, n, 0);
  } else {
    std::vector<std::thread> threads;
    const size_t chunk = (n + w - 1) / w;
    for (size_t k = 0; k < w; ++k) {
      const size_t begin = k * chunk;
      const size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(score_range, begin, end, k);
    }
    for (std::thread& t : threads) t.join();
  }

  GenerationStats stats;
  stats.solved_union.assign(data.trajectories.size(), 0);
  double size_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Individual& ind = pop[i];
    size_sum += static_cast<double>(ind.program.size());
    for (size_t t = 0; t < ind.solved.size(); ++t) {
      stats.solved_union[t] = static_cast<uint8_t>(stats.solved_union[t] | ind.solved[t]);
    }
    const Individual& cur = pop[static_cast<size_t>(stats.best_index)];
    if (i > 0 && (ind.fitness > cur.fitness ||
                  (ind.fitness == cur.fitness && ind.program.size() < cur.program.size()))) {
      stats.best_index = static_cast<int>(i);
    }
  }
  const Individual& best = pop[static_cast<size_t>(stats.best_index)];
  stats.best_fitness = best.fitness;
  stats.best_accuracy = data.size() == 0 ? 0.0
                                         : static_cast<double>(best.solved_count) /
                                               static_cast<double>(data.size());
  stats.mean_size = n == 0 ? 0.0 : size_sum / static_cast<double>(n);
  return stats;
}

std::vector<Individual> breed_population(const std::vector<Individual>& pop,
                                         const GenerationStats& stats, const GPConfig& cfg,
                                         const dsl::Grammar& g, Rng& rng) {
  std::vector<Individual> next;
  next.reserve(static_cast<size_t>(cfg.population_size));
  next.push_back({pop[static_cast<size_t>(stats.best_index)].program, 0.0, {}, 0});
  while (static_cast<int>(next.size()) < cfg.population_size) {
    const Individual& p1 = tournament_select(pop, cfg.tournament_size, rng);
    const Individual& p2 = tournament_select(pop, cfg.tournament_size, rng);
    auto [c1, c2] = crossover(p1.program, p2.program, g, cfg.p_crossover, rng);
    c1 = mutate(c1, g, cfg.p_mutation, cfg.max_sample_depth, rng);
    c2 = mutate(c2, g, cfg.p_mutation, cfg.max_sample_depth, rng);
    next.push_back({std::move(c1), 0.0, {}, 0});
    if (static_cast<int>(next.size()) < cfg.population_size) {
      next.push_back({std::move(c2), 0.0, {}, 0});
    }
  }
  return next;
}

std::pair<std::vector<Individual>, GenerationStats> run_generation(
    std::vector<Individual> pop, const env::Dataset& data, const GPConfig& cfg,
    const dsl::Grammar& g, Rng& rng) {
  std::vector<dsl::AbstractionCaches> caches;
  const GenerationStats stats = evaluate_population(pop, g, data, cfg.bloat_weight, cfg.workers,
                                                    caches);
  return {breed_population(pop, stats, cfg, g, rng), stats};
}

RunReport evolve(const GPConfig& cfg, const DatasetProvider& provider, int start_length,
                 const EvolveObserver& observer) {
  cfg.validate();

  dsl::Grammar grammar = dsl::Grammar::base();
  Rng rng(cfg.rng_seed);
  std::vector<Individual> pop = init_population(cfg, grammar, rng);
  std::vector<dsl::AbstractionCaches> caches(static_cast<size_t>(cfg.workers));

  RunReport report;
  report.seed = cfg.rng_seed;

  for (int length = start_length;; ++length) {
    std::optional<env::Dataset> data = provider(length);
    if (!data.has_value()) break;
    if (data->size() < 1) fail(ErrorCode::EmptyDataset, "dataset has no trajectories");

    const auto t0 = std::chrono::steady_clock::now();
    LengthRecord rec;
    rec.sequence_length = length;
    std::vector<uint8_t> cumulative_union(data->trajectories.size(), 0);
    double best_fitness_seen = -1.0;

    GenerationStats stats;
    for (int gen = 1;; ++gen) {
      stats = evaluate_population(pop, grammar, *data, cfg.bloat_weight, cfg.workers, caches);
      rec.generations = gen;
      for (size_t t = 0; t < cumulative_union.size(); ++t) {
        cumulative_union[t] = static_cast<uint8_t>(cumulative_union[t] | stats.solved_union[t]);
      }
      if (stats.best_accuracy > rec.best_accuracy ||
          (stats.best_accuracy == rec.best_accuracy && stats.best_fitness > best_fitness_seen)) {
        rec.best_accuracy = stats.best_accuracy;
        best_fitness_seen = stats.best_fitness;
        rec.best_program =
            dsl::print_program(pop[static_cast<size_t>(stats.best_index)].program, grammar);
      }
      if (observer) {
        GenerationEvent ev{length, gen, &stats, &pop};
        observer(ev);
      }
      if (stats.best_accuracy >= cfg.advance_threshold ||
          gen >= cfg.max_generations_per_length) {
        break;  // advance; the evaluated population carries over as-is
      }
      pop = breed_population(pop, stats, cfg, grammar, rng);
    }

    int solved_any = 0;
    for (uint8_t b : cumulative_union) solved_any += b;
    rec.union_accuracy =
        static_cast<double>(solved_any) / static_cast<double>(cumulative_union.size());

    if (solved_any == 0) {
      report.halted = true;
      rec.wall_clock_seconds = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
      report.lengths.push_back(std::move(rec));
      break;
    }

    // Library learning over every program that solved at least one tau,
    // then the population is rewritten to use the new functions.
    if (cfg.use_library) {
      std::vector<dsl::Program> corpus;
      for (const Individual& ind : pop) {
        if (ind.solved_count >= 1) corpus.push_back(ind.program);
      }
      const auto mined = liblearn::mine_abstractions(corpus, grammar, cfg.library_size_limit,
                                                     cfg.library_count_limit);
      for (const liblearn::MinedAbstraction& m : mined) {
        const dsl::RuleId id = liblearn::register_abstraction(grammar, m.abstraction);
        for (Individual& ind : pop) {
          ind.program = liblearn::rewrite_program(ind.program, grammar, id);
        }
        rec.library_added.push_back(m.abstraction.definition(grammar));
      }
      if (!mined.empty()) {
        for (auto& c : caches) c.clear();
      }
    }

    rec.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.lengths.push_back(std::move(rec));
  }

  for (int i = 0; i < grammar.num_abstractions(); ++i) {
    const dsl::RuleId id = grammar.abstraction_rule(i);
    report.final_library.push_back(grammar.rule(id).name + "=" +
                                   dsl::print_pattern(grammar.abstraction_body(i), grammar));
  }
  report.grammar_dump = grammar.dump();
  return report;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["seed"] = r.seed;
  j["manifest_hash"] = r.manifest_hash;
  j["halted"] = r.halted;
  json lengths = json::array();
  for (const LengthRecord& rec : r.lengths) {
    json e;
    e["sequence_length"] = rec.sequence_length;
    e["generations"] = rec.generations;
    e["best_accuracy"] = rec.best_accuracy;
    e["union_accuracy"] = rec.union_accuracy;
    e["best_program"] = rec.best_program;
    e["library"] = rec.library_added;
    e["wall_clock_seconds"] = rec.wall_clock_seconds;
    lengths.push_back(std::move(e));
  }
  j["lengths"] = std::move(lengths);
  j["final_library"] = r.final_library;
  j["grammar_dump"] = r.grammar_dump;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::DataError, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    RunReport r;
    r.seed = j.at("seed").get<uint64_t>();
    r.manifest_hash = j.value("manifest_hash", std::string());
    r.halted = j.at("halted").get<bool>();
    for (const json& e : j.at("lengths")) {
      LengthRecord rec;
      rec.sequence_length = e.at("sequence_length").get<int>();
      rec.generations = e.at("generations").get<int>();
      rec.best_accuracy = e.at("best_accuracy").get<double>();
      rec.union_accuracy = e.at("union_accuracy").get<double>();
      rec.best_program = e.at("best_program").get<std::string>();
      rec.library_added = e.at("library").get<std::vector<std::string>>();
      rec.wall_clock_seconds = e.at("wall_clock_seconds").get<double>();
      r.lengths.push_back(std::move(rec));
    }
    r.final_library = j.at("final_library").get<std::vector<std::string>>();
    r.grammar_dump = j.at("grammar_dump").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::DataError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace mazegp::gp
