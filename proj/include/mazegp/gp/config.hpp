#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace mazegp::gp {

struct GPConfig {
  int population_size = 1000;
  int tournament_size = 100;
  double p_mutation = 0.5;
  double p_crossover = 0.5;
  double bloat_weight = 0.025;       // w_b
  int max_sample_depth = 6;
  int max_generations_per_length = 10;
  double advance_threshold = 0.95;   // best-individual solved fraction
  int library_size_limit = 10;       // abstraction bodies stay below this
  int library_count_limit = 5;       // per curriculum advance
  uint64_t rng_seed = 0;

  bool use_library = true;
  int workers = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

std::string config_to_json(const GPConfig& cfg);
GPConfig config_from_json(const std::string& text);
GPConfig load_config(const std::filesystem::path& path);

// FNV-1a over the canonical JSON dump; identifies a run setup in manifests.
std::string config_hash(const GPConfig& cfg);

}  // namespace mazegp::gp
