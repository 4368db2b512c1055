#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mazegp/gp/operators.hpp"
#include "mazegp/liblearn/abstraction.hpp"

namespace mazegp::gp {

struct GenerationStats {
  double best_fitness = 0.0;
  double best_accuracy = 0.0;  // best individual's solved fraction
  double mean_size = 0.0;
  int best_index = 0;
  std::vector<uint8_t> solved_union;  // tau solved by at least one individual

  double union_accuracy() const {
    if (solved_union.empty()) return 0.0;
    int n = 0;
    for (uint8_t b : solved_union) n += b;
    return static_cast<double>(n) / static_cast<double>(solved_union.size());
  }
};

// Scores every individual (data-parallel over the population when
// workers > 1; identical results for any worker count). One cache per
// worker slot.
GenerationStats evaluate_population(std::vector<Individual>& pop, const dsl::Grammar& g,
                                    const env::Dataset& data, double bloat_weight, int workers,
                                    std::vector<dsl::AbstractionCaches>& worker_caches);

// Next generation from an evaluated population: the single best survives,
// the rest come from tournament parents through crossover then mutation.
std::vector<Individual> breed_population(const std::vector<Individual>& pop,
                                         const GenerationStats& stats, const GPConfig& cfg,
                                         const dsl::Grammar& g, Rng& rng);

// evaluate + breed in one step, as the generation loop uses it.
std::pair<std::vector<Individual>, GenerationStats> run_generation(
    std::vector<Individual> pop, const env::Dataset& data, const GPConfig& cfg,
    const dsl::Grammar& g, Rng& rng);

struct LengthRecord {
  int sequence_length = 0;
  int generations = 0;
  double best_accuracy = 0.0;   // max over the generations at this length
  double union_accuracy = 0.0;  // cumulative union over those generations
  std::string best_program;
  std::vector<std::string> library_added;  // fn_k=(...) definitions
  double wall_clock_seconds = 0.0;
};

struct RunReport {
  uint64_t seed = 0;
  bool halted = false;
  std::vector<LengthRecord> lengths;
  std::vector<std::string> final_library;
  std::string grammar_dump;
  std::string manifest_hash;  // filled by the CLI
};

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

// Supplies the dataset for a sequence length; nullopt ends the curriculum.
using DatasetProvider = std::function<std::optional<env::Dataset>(int sequence_length)>;

struct GenerationEvent {
  int sequence_length = 0;
  int generation = 0;  // 1-based within the length
  const GenerationStats* stats = nullptr;
  const std::vector<Individual>* population = nullptr;  // evaluated
};
using EvolveObserver = std::function<void(const GenerationEvent&)>;

// The full curriculum loop. Starts at start_length and advances when the
// best individual imitates at least advance_threshold of the data or the
// generation budget for the length is spent; each advance mines the library
// from the programs that solved something (unless use_library is off),
// rewrites the population with the new functions, and carries it into the
// next length. Halts when a whole budget passes with nothing solved.
RunReport evolve(const GPConfig& cfg, const DatasetProvider& provider, int start_length = 3,
                 const EvolveObserver& observer = nullptr);

}  // namespace mazegp::gp
