#include "mazegp/env/policy.hpp"

#include <memory>
#include <queue>

#include "mazegp/common.hpp"
#include "mazegp/rng.hpp"

namespace mazegp::env {

Action wall_follower_step(const Observation& obs, bool& pending) {
  if (pending) {
    pending = false;
    return Action::Forward;  // the cell we just turned toward is open
  }
  if (obs.at(3, 0) != Cell::Wall) {
    pending = true;
    return Action::Right;
  }
  if (obs.at(2, 1) != Cell::Wall) return Action::Forward;
  return Action::Left;
}

Action tree_path_step(const Maze& maze, const AgentPose& pose) {
  // BFS from the goal; the unique neighbor that lowers the distance is the
  // next cell on the tree path.
  std::vector<int> dist(maze.cells.size(), -1);
  std::queue<std::pair<int, int>> q;
  q.emplace(maze.goal_x, maze.goal_y);
  dist[static_cast<size_t>(maze.goal_y) * maze.width + maze.goal_x] = 0;
  const int sx[4] = {0, 1, 0, -1};
  const int sy[4] = {1, 0, -1, 0};
  while (!q.empty()) {
    const auto [x, y] = q.front();
    q.pop();
    for (int i = 0; i < 4; ++i) {
      const int nx = x + sx[i];
      const int ny = y + sy[i];
      if (!maze.in_bounds(nx, ny) || maze.at(nx, ny) == Cell::Wall) continue;
      int& d = dist[static_cast<size_t>(ny) * maze.width + nx];
      if (d >= 0) continue;
      d = dist[static_cast<size_t>(y) * maze.width + x] + 1;
      q.emplace(nx, ny);
    }
  }

  const int here = dist[static_cast<size_t>(pose.y) * maze.width + pose.x];
  Heading desired = pose.heading;
  for (int i = 0; i < 4; ++i) {
    const int nx = pose.x + sx[i];
    const int ny = pose.y + sy[i];
    if (!maze.in_bounds(nx, ny) || maze.at(nx, ny) == Cell::Wall) continue;
    if (dist[static_cast<size_t>(ny) * maze.width + nx] == here - 1) {
      desired = static_cast<Heading>(i);  // sx/sy are ordered north, east, south, west
      break;
    }
  }
  if (desired == pose.heading) return Action::Forward;
  if (turn_right(pose.heading) == desired) return Action::Right;
  if (turn_left(pose.heading) == desired) return Action::Left;
  return Action::Right;  // 180 degrees; either turn works, pick right
}

Policy make_policy(const std::string& id, uint64_t seed) {
  if (id == "wall-follower") {
    auto pending = std::make_shared<bool>(false);
    return [pending](const Maze&, const AgentPose&, const Observation& obs) {
      return wall_follower_step(obs, *pending);
    };
  }
  if (id == "tree-path") {
    return [](const Maze& maze, const AgentPose& pose, const Observation&) {
      return tree_path_step(maze, pose);
    };
  }
  if (id == "random") {
    auto rng = std::make_shared<Rng>(seed);
    return [rng](const Maze&, const AgentPose&, const Observation&) {
      return static_cast<Action>(rng->below(3));
    };
  }
  fail(ErrorCode::DataError, "unknown policy '" + id + "'");
}

}  // namespace mazegp::env
