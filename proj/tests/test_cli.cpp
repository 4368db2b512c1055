#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mazegp_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path log = work_dir() / "cmd.log";
  const std::string cmd = std::string(MAZEGP_BIN) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// wall-clock fields differ between runs; reports compare equal without them
std::string normalized_report(const fs::path& p) {
  json j = json::parse(slurp(p));
  for (auto& rec : j.at("lengths")) rec["wall_clock_seconds"] = 0.0;
  return j.dump();
}

const char* kTinyConfig = R"({
  "population_size": 60,
  "tournament_size": 6,
  "max_generations_per_length": 3
})";

}  // namespace

TEST_CASE("gen-data: deterministic files, availability warning") {
  const fs::path dir = work_dir();
  const std::string data1 = (dir / "data1").string();
  const std::string data2 = (dir / "data2").string();

  auto r = run("gen-data --width 9 --height 9 --seeds 1 2 --lengths 3 4 --count 10 --out " + data1);
  CHECK(r.exit_code == 0);
  auto r2 = run("gen-data --width 9 --height 9 --seeds 1 2 --lengths 3 4 --count 10 --out " + data2);
  CHECK(r2.exit_code == 0);
  for (int length : {3, 4}) {
    const std::string name = "dataset_len" + std::to_string(length) + ".json";
    CHECK(slurp(dir / "data1" / name) == slurp(dir / "data2" / name));
    const json j = json::parse(slurp(dir / "data1" / name));
    CHECK(j.at("sequence_length") == length);
    CHECK(j.at("source_policy") == "wall-follower");
    CHECK(j.at("trajectories").size() == 10);
  }

  // asking for more windows than exist warns and writes what is available
  auto warn = run("gen-data --width 9 --height 9 --seeds 1 --lengths 40 --count 500 --out " +
                  (dir / "data_warn").string());
  CHECK(warn.exit_code == 0);
  CHECK(warn.output.find("warning") != std::string::npos);
  const json jw = json::parse(slurp(dir / "data_warn" / "dataset_len40.json"));
  CHECK(jw.at("trajectories").size() < 500);
  CHECK(jw.at("trajectories").size() >= 1);

  // errors surface with nonzero exits: bad dimensions, unknown policy
  CHECK(run("gen-data --width 8 --height 9 --out " + (dir / "x1").string()).exit_code == 3);
  CHECK(run("gen-data --policy ppo --out " + (dir / "x2").string()).exit_code == 3);
}

TEST_CASE("evolve: outputs, determinism, ablation arm") {
  const fs::path dir = work_dir();
  const std::string data = (dir / "data1").string();
  spit(dir / "tiny.json", kTinyConfig);

  const std::string out1 = (dir / "run1").string();
  auto r = run("evolve --config " + (dir / "tiny.json").string() + " --data " + data +
               " --seed 5 --out " + out1 + " --quiet");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "run1" / "report.json"));
  CHECK(fs::exists(dir / "run1" / "library.txt"));
  CHECK(fs::exists(dir / "run1" / "best_program.txt"));
  CHECK(fs::exists(dir / "run1" / "manifest.json"));

  const json report = json::parse(slurp(dir / "run1" / "report.json"));
  CHECK(report.at("seed") == 5);
  CHECK(report.at("lengths").size() >= 1);
  CHECK(report.at("lengths")[0].at("sequence_length") == 3);

  const json manifest = json::parse(slurp(dir / "run1" / "manifest.json"));
  CHECK(manifest.at("config_hash") == report.at("manifest_hash"));
  CHECK(manifest.at("dataset_paths").size() == 2);
  CHECK(slurp(dir / "run1" / "best_program.txt").find("; manifest=") == 0);

  // same seed, same report
  const std::string out2 = (dir / "run2").string();
  run("evolve --config " + (dir / "tiny.json").string() + " --data " + data +
      " --seed 5 --out " + out2 + " --quiet");
  CHECK(normalized_report(dir / "run1" / "report.json") ==
        normalized_report(dir / "run2" / "report.json"));

  // different seed, different population trajectory (report text differs)
  const std::string out3 = (dir / "run3").string();
  run("evolve --config " + (dir / "tiny.json").string() + " --data " + data +
      " --seed 6 --out " + out3 + " --quiet");
  CHECK(normalized_report(dir / "run1" / "report.json") !=
        normalized_report(dir / "run3" / "report.json"));

  // --no-library: no library file, base grammar untouched
  const std::string out4 = (dir / "run_nolib").string();
  auto r4 = run("evolve --config " + (dir / "tiny.json").string() + " --data " + data +
                " --seed 5 --out " + out4 + " --no-library --quiet");
  CHECK(r4.exit_code == 0);
  CHECK_FALSE(fs::exists(dir / "run_nolib" / "library.txt"));
  const json nolib = json::parse(slurp(dir / "run_nolib" / "report.json"));
  CHECK(nolib.at("final_library").empty());
  CHECK(nolib.at("grammar_dump").get<std::string>().find("fn_") == std::string::npos);

  // config validation failures name the field and exit 2
  spit(dir / "bad.json", R"({"population_size": 1})");
  auto bad = run("evolve --config " + (dir / "bad.json").string() + " --data " + data +
                 " --out " + (dir / "x3").string());
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("population_size") != std::string::npos);

  // a data directory without datasets exits 3
  fs::create_directories(dir / "empty_data");
  CHECK(run("evolve --data " + (dir / "empty_data").string() + " --out " +
            (dir / "x4").string())
            .exit_code == 3);
}

TEST_CASE("explain: json output, rendering, library programs, bad index") {
  const fs::path dir = work_dir();
  const std::string data_file = (dir / "data1" / "dataset_len3.json").string();

  spit(dir / "prog.txt",
       "; example policy\n(if_action (eq-obj? (get $1 1 0) goal-obj) left-action "
       "forward-action)\n");
  auto r = run("explain --program " + (dir / "prog.txt").string() + " --data " + data_file +
               " --index 0 --out " + (dir / "expl.json").string());
  CHECK(r.exit_code == 0);
  const json expl = json::parse(slurp(dir / "expl.json"));
  CHECK(expl.size() == 3);  // one explanation per state in the sub-trajectory
  for (const auto& e : expl) {
    CHECK(e.contains("action"));
    CHECK(e.contains("cells"));
    CHECK(e.contains("program"));
  }

  auto rendered = run("explain --program " + (dir / "prog.txt").string() + " --data " +
                      data_file + " --index 1 --render");
  CHECK(rendered.exit_code == 0);
  CHECK(rendered.output.find("action:") != std::string::npos);
  CHECK(rendered.output.find('A') != std::string::npos);

  // library-defined rules resolve through --library
  spit(dir / "lib.txt",
       "fn_1=(if_action #0 left-action forward-action)\nfn_3=(eq-obj? (get #0 2 1) "
       "wall-obj)\n");
  spit(dir / "prog_lib.txt", "(fn_1 (fn_3 $1))\n");
  auto lib = run("explain --program " + (dir / "prog_lib.txt").string() + " --library " +
                 (dir / "lib.txt").string() + " --data " + data_file + " --index 0 --out " +
                 (dir / "expl_lib.json").string());
  CHECK(lib.exit_code == 0);
  const json expl_lib = json::parse(slurp(dir / "expl_lib.json"));
  CHECK(expl_lib[0].at("program").get<std::string>().find("fn_") == std::string::npos);

  // without the library the program cannot parse: data error
  CHECK(run("explain --program " + (dir / "prog_lib.txt").string() + " --data " + data_file +
            " --index 0")
            .exit_code == 3);

  auto bad = run("explain --program " + (dir / "prog.txt").string() + " --data " + data_file +
                 " --index 999");
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("IndexOutOfRange") != std::string::npos);
}

TEST_CASE("report: tables and ablation diff") {
  const fs::path dir = work_dir();
  const std::string run1 = (dir / "run1").string();
  const std::string run3 = (dir / "run3").string();
  const std::string nolib = (dir / "run_nolib").string();

  auto r = run("report --runs " + run1 + " " + run3 + " --out " + (dir / "table.csv").string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "table.csv");
  CHECK(csv.find("length,metric,mean,std") == 0);
  CHECK(csv.find("3,best_accuracy,") != std::string::npos);
  CHECK(csv.find("3,union_accuracy,") != std::string::npos);

  auto d = run("report --runs " + run1 + " " + run3 + " --diff " + nolib + " --out " +
               (dir / "diff.csv").string());
  CHECK(d.exit_code == 0);
  const std::string diff = slurp(dir / "diff.csv");
  CHECK(diff.find("3,best_accuracy_diff,") != std::string::npos);
  CHECK(diff.find("3,union_accuracy_diff,") != std::string::npos);

  // reports are a pure function of the run directories
  auto again = run("report --runs " + run1 + " " + run3 + " --out " +
                   (dir / "table2.csv").string());
  CHECK(again.exit_code == 0);
  CHECK(slurp(dir / "table2.csv") == csv);

  CHECK(run("report --runs " + (dir / "does_not_exist").string()).exit_code == 3);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run("bogus-subcommand").exit_code == 2);
  CHECK(run("evolve").exit_code == 2);  // missing required flags
}
