#pragma once

#include <cstdint>
#include <vector>

#include "mazegp/grid.hpp"

namespace mazegp::env {

// A perfect maze: the non-wall cells form a tree, so there is exactly one
// path between any two of them. Immutable after generation.
struct Maze {
  int width = 0;
  int height = 0;
  std::vector<Cell> cells;  // row-major, index y * width + x
  int start_x = 0, start_y = 0;
  int goal_x = 0, goal_y = 0;
  uint64_t seed = 0;

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

  // Everything outside the maze reads as wall.
  Cell at(int x, int y) const {
    return in_bounds(x, y) ? cells[static_cast<size_t>(y) * width + x] : Cell::Wall;
  }
};

struct AgentPose {
  int x = 0;
  int y = 0;
  Heading heading = Heading::North;

  bool operator==(const AgentPose&) const = default;
};

// Randomized depth-first carving on the odd lattice; deterministic per seed.
// The goal goes on the carved cell farthest (graph distance) from the start.
// Width and height must be odd and >= 5 (InvalidDimensions otherwise).
Maze generate_maze(int width, int height, uint64_t seed);

// left/right rotate in place; forward advances one cell unless blocked.
AgentPose step(const Maze& maze, const AgentPose& pose, Action action);

// The egocentric 5x5 window (agent at local (2,0), facing +y). There is no
// occlusion; out-of-bounds cells are walls.
Observation observe(const Maze& maze, const AgentPose& pose);

AgentPose start_pose(const Maze& maze);

}  // namespace mazegp::env
