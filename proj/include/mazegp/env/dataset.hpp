#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mazegp/env/policy.hpp"

namespace mazegp::env {

struct StepPair {
  Observation obs;
  Action action = Action::Forward;
};

// A consecutive slice of one episode; the unit of imitation.
struct SubTrajectory {
  std::vector<StepPair> pairs;

  int length() const { return static_cast<int>(pairs.size()); }
};

struct Dataset {
  int sequence_length = 0;
  std::vector<SubTrajectory> trajectories;
  std::string source_policy;
  std::vector<uint64_t> maze_seeds;

  int size() const { return static_cast<int>(trajectories.size()); }  // N_D
};

// Observe / act / step until the goal cell or max_steps. On a perfect maze
// the wall follower always gets there within 4 * width * height steps.
std::vector<StepPair> rollout(const Maze& maze, AgentPose start, const Policy& policy,
                              int max_steps);

// Non-overlapping consecutive windows of sequence_length (stride equal to
// the length), shuffled by seed, first `count` kept (all if fewer exist).
// Throws EmptyDataset when no episode yields a full window. The caller fills
// source_policy / maze_seeds.
Dataset slice_dataset(const std::vector<std::vector<StepPair>>& episodes, int sequence_length,
                      int count, uint64_t seed);

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);
void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace mazegp::env
