#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mazegp/dsl/parser.hpp"
#include "mazegp/env/dataset.hpp"
#include "mazegp/explain/explain.hpp"
#include "mazegp/explain/report.hpp"
#include "mazegp/gp/engine.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mazegp;

namespace {

constexpr const char* kToolVersion = "mazegp 0.1.0";

std::string read_file(const fs::path& path, ErrorCode code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(code, "cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::DataError, "cannot write " + path.string());
  out << contents;
}

fs::path dataset_path(const fs::path& dir, int length) {
  return dir / ("dataset_len" + std::to_string(length) + ".json");
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
      return 2;
    case ErrorCode::Internal:
      return 4;
    default:
      return 3;
  }
}

// ---- gen-data ------------------------------------------------------------

struct GenDataArgs {
  int width = 15;
  int height = 15;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string policy = "wall-follower";
  std::vector<int> lengths = {3, 4, 5, 6, 7, 8, 9};
  int count = 50;
  uint64_t slice_seed = 0;
  std::string out_dir;
};

int cmd_gen_data(const GenDataArgs& args) {
  fs::create_directories(args.out_dir);

  std::vector<std::vector<env::StepPair>> episodes;
  for (uint64_t seed : args.seeds) {
    const env::Maze maze = env::generate_maze(args.width, args.height, seed);
    const env::Policy policy = env::make_policy(args.policy, seed);
    const int max_steps = 4 * args.width * args.height;
    episodes.push_back(env::rollout(maze, env::start_pose(maze), policy, max_steps));
  }

  for (int length : args.lengths) {
    env::Dataset ds = env::slice_dataset(episodes, length, args.count, args.slice_seed);
    ds.source_policy = args.policy;
    ds.maze_seeds = args.seeds;
    if (ds.size() < args.count) {
      std::cerr << "warning: only " << ds.size() << " windows of length " << length
                << " available (requested " << args.count << ")\n";
    }
    const fs::path path = dataset_path(args.out_dir, length);
    env::save_dataset(ds, path);
    std::cout << path.string() << ": N_D=" << ds.size() << "\n";
  }
  return 0;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveArgs {
  std::string config_path;
  std::string data_dir;
  std::string out_dir;
  std::optional<uint64_t> seed;
  bool no_library = false;
  std::optional<int> workers;
  std::optional<int> start_length;
  std::optional<int> max_length;
  bool quiet = false;
};

int cmd_evolve(const EvolveArgs& args) {
  gp::GPConfig cfg;
  if (!args.config_path.empty()) cfg = gp::load_config(args.config_path);
  if (args.seed.has_value()) cfg.rng_seed = *args.seed;
  if (args.workers.has_value()) cfg.workers = *args.workers;
  if (args.no_library) cfg.use_library = false;
  cfg.validate();

  // One dataset file per length; the curriculum starts at the smallest
  // length present and ends after the largest (or at --max-length).
  std::map<int, fs::path> files;
  if (!fs::is_directory(args.data_dir)) {
    fail(ErrorCode::DataError, "data dir " + args.data_dir + " does not exist");
  }
  for (const auto& entry : fs::directory_iterator(args.data_dir)) {
    const std::string name = entry.path().filename().string();
    int length = 0;
    if (sscanf(name.c_str(), "dataset_len%d.json", &length) == 1) {
      files[length] = entry.path();
    }
  }
  if (files.empty()) {
    fail(ErrorCode::DataError, "no dataset_len<N>.json files in " + args.data_dir);
  }
  const int start_length = args.start_length.value_or(files.begin()->first);

  fs::create_directories(args.out_dir);
  const std::string manifest_hash = gp::config_hash(cfg);
  const std::string started_at = timestamp_now();

  gp::DatasetProvider provider = [&](int length) -> std::optional<env::Dataset> {
    if (args.max_length.has_value() && length > *args.max_length) return std::nullopt;
    auto it = files.find(length);
    if (it == files.end()) return std::nullopt;
    return env::load_dataset(it->second);
  };
  gp::EvolveObserver observer;
  if (!args.quiet) {
    observer = [](const gp::GenerationEvent& ev) {
      std::cout << "len " << ev.sequence_length << " gen " << ev.generation << ": best_fitness="
                << ev.stats->best_fitness << " best_acc=" << ev.stats->best_accuracy
                << " union_acc=" << ev.stats->union_accuracy()
                << " mean_size=" << ev.stats->mean_size << "\n";
    };
  }

  gp::RunReport report = gp::evolve(cfg, provider, start_length, observer);
  report.manifest_hash = manifest_hash;

  write_file(fs::path(args.out_dir) / "report.json", gp::report_to_json(report));
  if (cfg.use_library) {
    std::string lib;
    for (const std::string& def : report.final_library) lib += def + "\n";
    write_file(fs::path(args.out_dir) / "library.txt", lib);
  }
  if (!report.lengths.empty()) {
    std::string best = "; manifest=" + manifest_hash + "\n";
    best += report.lengths.back().best_program + "\n";
    write_file(fs::path(args.out_dir) / "best_program.txt", best);
  }

  json manifest;
  manifest["config_hash"] = manifest_hash;
  manifest["config"] = json::parse(gp::config_to_json(cfg));
  json paths = json::array();
  for (const auto& [length, path] : files) {
    if (length < start_length) continue;
    if (args.max_length.has_value() && length > *args.max_length) continue;
    paths.push_back(path.string());
  }
  manifest["dataset_paths"] = std::move(paths);
  manifest["seeds"] = {cfg.rng_seed};
  manifest["tool_version"] = kToolVersion;
  manifest["started_at"] = started_at;
  manifest["finished_at"] = timestamp_now();
  write_file(fs::path(args.out_dir) / "manifest.json", manifest.dump(2) + "\n");

  if (report.halted) std::cout << "halted: no sub-trajectory could be imitated\n";
  std::cout << "report: " << (fs::path(args.out_dir) / "report.json").string() << "\n";
  return 0;
}

// ---- explain ----------------------------------------------------------------

struct ExplainArgs {
  std::string program_path;
  std::string library_path;
  std::string data_path;
  int index = 0;
  bool render = false;
  std::string out_path;
};

int cmd_explain(const ExplainArgs& args) {
  dsl::Grammar grammar = dsl::Grammar::base();
  if (!args.library_path.empty()) {
    liblearn::load_library(read_file(args.library_path, ErrorCode::DataError), grammar);
  }
  const auto programs =
      dsl::parse_program_file(read_file(args.program_path, ErrorCode::DataError), grammar);
  if (programs.empty()) fail(ErrorCode::DataError, "no program in " + args.program_path);
  const dsl::Program& program = programs.front();

  const env::Dataset ds = env::load_dataset(args.data_path);
  if (args.index < 0 || args.index >= ds.size()) {
    fail(ErrorCode::IndexOutOfRange, "index " + std::to_string(args.index) +
                                         " out of range; dataset has " +
                                         std::to_string(ds.size()) + " trajectories");
  }

  json out = json::array();
  const env::SubTrajectory& tau = ds.trajectories[static_cast<size_t>(args.index)];
  for (const env::StepPair& pair : tau.pairs) {
    const auto expl = explain::explain_decision(program, grammar, pair.obs);
    out.push_back(json::parse(explain::explanation_to_json(expl)));
    if (args.render) {
      std::cout << explain::render_ascii(expl, pair.obs) << "\n";
    }
  }
  const std::string text = out.dump(2) + "\n";
  if (!args.out_path.empty()) {
    write_file(args.out_path, text);
  } else if (!args.render) {
    std::cout << text;
  }
  return 0;
}

// ---- report -----------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> run_dirs;
  std::vector<std::string> diff_dirs;
  std::string out_path;
};

std::vector<gp::RunReport> load_runs(const std::vector<std::string>& dirs) {
  std::vector<gp::RunReport> runs;
  for (const std::string& dir : dirs) {
    runs.push_back(gp::report_from_json(read_file(fs::path(dir) / "report.json",
                                                  ErrorCode::DataError)));
  }
  return runs;
}

int cmd_report(const ReportArgs& args) {
  const auto rows = explain::accuracy_report(load_runs(args.run_dirs));
  std::string text;
  if (!args.diff_dirs.empty()) {
    const auto baseline = explain::accuracy_report(load_runs(args.diff_dirs));
    text = explain::diff_to_csv(explain::report_diff(rows, baseline));
  } else {
    text = explain::report_to_csv(rows);
  }
  if (!args.out_path.empty()) {
    write_file(args.out_path, text);
  }
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolves DSL programs that imitate maze-agent sub-trajectories, mines a library "
               "of reusable functions, and explains per-decision behavior."};
  app.require_subcommand(1);

  GenDataArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "Roll out an oracle policy and slice "
                                                     "sub-trajectory datasets");
  gen_cmd->add_option("--width", gen.width, "Maze width (odd, >= 5)");
  gen_cmd->add_option("--height", gen.height, "Maze height (odd, >= 5)");
  gen_cmd->add_option("--seeds", gen.seeds, "Maze seeds, one episode each");
  gen_cmd->add_option("--policy", gen.policy, "wall-follower | tree-path | random");
  gen_cmd->add_option("--lengths", gen.lengths, "Sequence lengths, one dataset file each");
  gen_cmd->add_option("--count", gen.count, "Sub-trajectories per dataset");
  gen_cmd->add_option("--slice-seed", gen.slice_seed, "Shuffle seed for window selection");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();

  EvolveArgs ev;
  CLI::App* ev_cmd = app.add_subcommand("evolve", "Run the GP curriculum on a data directory");
  ev_cmd->add_option("--config", ev.config_path, "JSON config; flags override its values");
  ev_cmd->add_option("--data", ev.data_dir, "Directory with dataset_len<N>.json files")
      ->required();
  ev_cmd->add_option("--out", ev.out_dir, "Output directory")->required();
  uint64_t seed_flag = 0;
  CLI::Option* seed_opt = ev_cmd->add_option("--seed", seed_flag, "RNG seed (overrides config)");
  ev_cmd->add_flag("--no-library", ev.no_library, "Disable library learning (ablation arm)");
  int workers_flag = 0;
  CLI::Option* workers_opt =
      ev_cmd->add_option("--workers", workers_flag, "Parallel fitness workers");
  int start_flag = 0, max_flag = 0;
  CLI::Option* start_opt = ev_cmd->add_option("--start-length", start_flag,
                                              "First sequence length (default: smallest file)");
  CLI::Option* max_opt =
      ev_cmd->add_option("--max-length", max_flag, "Stop after this sequence length");
  ev_cmd->add_flag("--quiet", ev.quiet, "No per-generation progress lines");

  ExplainArgs ex;
  CLI::App* ex_cmd = app.add_subcommand("explain", "Explain a program's decisions on one "
                                                   "sub-trajectory");
  ex_cmd->add_option("--program", ex.program_path, "Program file (first line is used)")
      ->required();
  ex_cmd->add_option("--library", ex.library_path, "Library file defining fn_k rules");
  ex_cmd->add_option("--data", ex.data_path, "Dataset file")->required();
  ex_cmd->add_option("--index", ex.index, "Trajectory index");
  ex_cmd->add_flag("--render", ex.render, "ASCII-render each step to stdout");
  ex_cmd->add_option("--out", ex.out_path, "Write the JSON explanation here");

  ReportArgs rep;
  CLI::App* rep_cmd = app.add_subcommand("report", "Aggregate run reports into accuracy tables");
  rep_cmd->add_option("--runs", rep.run_dirs, "Run output directories")->required();
  rep_cmd->add_option("--diff", rep.diff_dirs, "Baseline run directories to subtract");
  rep_cmd->add_option("--out", rep.out_path, "Write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) return cmd_gen_data(gen);
    if (*ev_cmd) {
      if (*seed_opt) ev.seed = seed_flag;
      if (*workers_opt) ev.workers = workers_flag;
      if (*start_opt) ev.start_length = start_flag;
      if (*max_opt) ev.max_length = max_flag;
      return cmd_evolve(ev);
    }
    if (*ex_cmd) return cmd_explain(ex);
    if (*rep_cmd) return cmd_report(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
