#pragma once

#include <functional>
#include <string>

#include "mazegp/env/maze.hpp"

namespace mazegp::env {

// A data-collection policy. The wall follower only reads the observation;
// the tree-path oracle is allowed to consult the maze.
using Policy = std::function<Action(const Maze&, const AgentPose&, const Observation&)>;

// Right-hand wall follower: turn right if the cell on the right is open,
// else go forward if the cell ahead is open, else turn left. Reads exactly
// the cells (3,0) and (2,1) of the egocentric window. A right turn commits
// the following step to move forward (`pending` carries that bit between
// steps); without it the rule re-fires on the trail cell, which sits to the
// right after every right turn, and the walk oscillates instead of
// following the wall.
Action wall_follower_step(const Observation& obs, bool& pending);

// One decision with no pending commitment.
inline Action wall_follower(const Observation& obs) {
  bool pending = false;
  return wall_follower_step(obs, pending);
}

// Walks the unique tree path to the goal: faces the next cell on the path,
// then moves. Exercises programs that need the goal-obj check.
Action tree_path_step(const Maze& maze, const AgentPose& pose);

// Known ids: "wall-follower", "tree-path", "random". The seed only matters
// for "random"; the policy it returns is stateful, so take a fresh one per
// episode. Throws DataError on unknown ids.
Policy make_policy(const std::string& id, uint64_t seed);

}  // namespace mazegp::env
