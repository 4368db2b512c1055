#include "mazegp/env/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "mazegp/common.hpp"
#include "mazegp/rng.hpp"

namespace mazegp::env {

using json = nlohmann::ordered_json;

std::vector<StepPair> rollout(const Maze& maze, AgentPose start, const Policy& policy,
                              int max_steps) {
  std::vector<StepPair> pairs;
  AgentPose pose = start;
  for (int i = 0; i < max_steps; ++i) {
    const Observation obs = observe(maze, pose);
    const Action a = policy(maze, pose, obs);
    pairs.push_back({obs, a});
    pose = step(maze, pose, a);
    if (pose.x == maze.goal_x && pose.y == maze.goal_y) break;
  }
  return pairs;
}

Dataset slice_dataset(const std::vector<std::vector<StepPair>>& episodes, int sequence_length,
                      int count, uint64_t seed) {
  if (sequence_length < 1) fail(ErrorCode::EmptyDataset, "sequence_length must be >= 1");
  std::vector<SubTrajectory> windows;
  for (const auto& ep : episodes) {
    const int full = static_cast<int>(ep.size()) / sequence_length;
    for (int w = 0; w < full; ++w) {
      SubTrajectory t;
      const auto begin = ep.begin() + static_cast<ptrdiff_t>(w) * sequence_length;
      t.pairs.assign(begin, begin + sequence_length);
      windows.push_back(std::move(t));
    }
  }
  if (windows.empty()) {
    fail(ErrorCode::EmptyDataset,
         "no episode is long enough for sequence length " + std::to_string(sequence_length));
  }

  Rng rng(seed);
  for (size_t i = windows.size() - 1; i > 0; --i) {
    std::swap(windows[i], windows[rng.index(i + 1)]);
  }
  if (static_cast<int>(windows.size()) > count) {
    windows.resize(static_cast<size_t>(count));
  }

  Dataset ds;
  ds.sequence_length = sequence_length;
  ds.trajectories = std::move(windows);
  return ds;
}

std::string dataset_to_json(const Dataset& ds) {
  json j;
  j["sequence_length"] = ds.sequence_length;
  j["source_policy"] = ds.source_policy;
  j["maze_seeds"] = ds.maze_seeds;
  json trajectories = json::array();
  for (const SubTrajectory& t : ds.trajectories) {
    json pairs = json::array();
    for (const StepPair& p : t.pairs) {
      json e;
      e["grid"] = grid_codes(p.obs);
      e["heading"] = static_cast<int>(p.obs.heading);
      e["action"] = to_string(p.action);
      pairs.push_back(std::move(e));
    }
    trajectories.push_back(std::move(pairs));
  }
  j["trajectories"] = std::move(trajectories);
  return j.dump(2) + "\n";
}

Dataset dataset_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::DataError, std::string("dataset is not valid JSON: ") + e.what());
  }
  try {
    Dataset ds;
    ds.sequence_length = j.at("sequence_length").get<int>();
    ds.source_policy = j.at("source_policy").get<std::string>();
    ds.maze_seeds = j.at("maze_seeds").get<std::vector<uint64_t>>();
    for (const json& tj : j.at("trajectories")) {
      SubTrajectory t;
      for (const json& pj : tj) {
        StepPair p;
        p.obs = observation_from_codes(pj.at("grid").get<std::string>(),
                                       pj.at("heading").get<int>());
        p.action = action_from_string(pj.at("action").get<std::string>());
        t.pairs.push_back(std::move(p));
      }
      if (t.length() != ds.sequence_length) {
        fail(ErrorCode::DataError, "trajectory length " + std::to_string(t.length()) +
                                       " does not match sequence_length " +
                                       std::to_string(ds.sequence_length));
      }
      ds.trajectories.push_back(std::move(t));
    }
    return ds;
  } catch (const json::exception& e) {
    fail(ErrorCode::DataError, std::string("malformed dataset: ") + e.what());
  }
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::DataError, "cannot write " + path.string());
  out << dataset_to_json(ds);
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::DataError, "cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return dataset_from_json(text);
}

}  // namespace mazegp::env
