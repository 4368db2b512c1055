#include "mazegp/gp/config.hpp"

#include <fstream>

#include <json.hpp>

#include "mazegp/common.hpp"

namespace mazegp::gp {

using json = nlohmann::ordered_json;

void GPConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    fail(ErrorCode::ConfigError, field + " " + why);
  };
  if (population_size < 2) bad("population_size", "must be >= 2");
  if (tournament_size < 1 || tournament_size > population_size) {
    bad("tournament_size", "must be in 1..population_size");
  }
  if (p_mutation < 0.0 || p_mutation > 1.0) bad("p_mutation", "must be in [0,1]");
  if (p_crossover < 0.0 || p_crossover > 1.0) bad("p_crossover", "must be in [0,1]");
  if (bloat_weight < 0.0) bad("bloat_weight", "must be >= 0");
  if (max_sample_depth < 1) bad("max_sample_depth", "must be >= 1");
  if (max_generations_per_length < 1) bad("max_generations_per_length", "must be >= 1");
  if (advance_threshold <= 0.0 || advance_threshold > 1.0) {
    bad("advance_threshold", "must be in (0,1]");
  }
  if (library_size_limit < 2) bad("library_size_limit", "must be >= 2");
  if (library_count_limit < 1) bad("library_count_limit", "must be >= 1");
  if (workers < 1) bad("workers", "must be >= 1");
}

std::string config_to_json(const GPConfig& cfg) {
  json j;
  j["population_size"] = cfg.population_size;
  j["tournament_size"] = cfg.tournament_size;
  j["p_mutation"] = cfg.p_mutation;
  j["p_crossover"] = cfg.p_crossover;
  j["bloat_weight"] = cfg.bloat_weight;
  j["max_sample_depth"] = cfg.max_sample_depth;
  j["max_generations_per_length"] = cfg.max_generations_per_length;
  j["advance_threshold"] = cfg.advance_threshold;
  j["library_size_limit"] = cfg.library_size_limit;
  j["library_count_limit"] = cfg.library_count_limit;
  j["rng_seed"] = cfg.rng_seed;
  j["use_library"] = cfg.use_library;
  j["workers"] = cfg.workers;
  return j.dump(2) + "\n";
}

GPConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  GPConfig cfg;
  try {
    auto get = [&](const char* key, auto& slot) {
      if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("population_size", cfg.population_size);
    get("tournament_size", cfg.tournament_size);
    get("p_mutation", cfg.p_mutation);
    get("p_crossover", cfg.p_crossover);
    get("bloat_weight", cfg.bloat_weight);
    get("max_sample_depth", cfg.max_sample_depth);
    get("max_generations_per_length", cfg.max_generations_per_length);
    get("advance_threshold", cfg.advance_threshold);
    get("library_size_limit", cfg.library_size_limit);
    get("library_count_limit", cfg.library_count_limit);
    get("rng_seed", cfg.rng_seed);
    get("use_library", cfg.use_library);
    get("workers", cfg.workers);
    for (const auto& [key, value] : j.items()) {
      static const char* known[] = {
          "population_size", "tournament_size", "p_mutation", "p_crossover",
          "bloat_weight", "max_sample_depth", "max_generations_per_length",
          "advance_threshold", "library_size_limit", "library_count_limit",
          "rng_seed", "use_library", "workers"};
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) fail(ErrorCode::ConfigError, "unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

GPConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot read config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json(text);
}

std::string config_hash(const GPConfig& cfg) {
  const std::string dump = config_to_json(cfg);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace mazegp::gp
