#include "mazegp/env/maze.hpp"

#include <algorithm>
#include <queue>

#include "mazegp/common.hpp"
#include "mazegp/rng.hpp"

namespace mazegp::env {

Maze generate_maze(int width, int height, uint64_t seed) {
  if (width < 5 || height < 5 || width % 2 == 0 || height % 2 == 0) {
    fail(ErrorCode::InvalidDimensions,
         "maze dimensions must be odd and >= 5, got " + std::to_string(width) + "x" +
             std::to_string(height));
  }

  Maze m;
  m.width = width;
  m.height = height;
  m.seed = seed;
  m.cells.assign(static_cast<size_t>(width) * height, Cell::Wall);
  auto cell = [&](int x, int y) -> Cell& { return m.cells[static_cast<size_t>(y) * width + x]; };

  // Depth-first backtracker over the rooms at odd coordinates. Knocking out
  // the wall between two rooms joins them; the carved cells form a tree.
  Rng rng(seed);
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(1, 1);
  cell(1, 1) = Cell::Empty;
  const int dx[4] = {0, 2, 0, -2};
  const int dy[4] = {2, 0, -2, 0};
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    int order[4] = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i) std::swap(order[i], order[rng.index(static_cast<size_t>(i) + 1)]);
    bool advanced = false;
    for (int i = 0; i < 4 && !advanced; ++i) {
      const int nx = x + dx[order[i]];
      const int ny = y + dy[order[i]];
      if (!m.in_bounds(nx, ny) || cell(nx, ny) != Cell::Wall) continue;
      cell(x + dx[order[i]] / 2, y + dy[order[i]] / 2) = Cell::Empty;
      cell(nx, ny) = Cell::Empty;
      stack.emplace_back(nx, ny);
      advanced = true;
    }
    if (!advanced) stack.pop_back();
  }

  m.start_x = 1;
  m.start_y = 1;

  // BFS from the start over carved cells; the farthest one becomes the goal
  // (first such cell in scan order on ties, so generation stays a pure
  // function of the seed).
  std::vector<int> dist(m.cells.size(), -1);
  std::queue<std::pair<int, int>> q;
  q.emplace(m.start_x, m.start_y);
  dist[static_cast<size_t>(m.start_y) * width + m.start_x] = 0;
  const int sx[4] = {0, 1, 0, -1};
  const int sy[4] = {1, 0, -1, 0};
  while (!q.empty()) {
    const auto [x, y] = q.front();
    q.pop();
    for (int i = 0; i < 4; ++i) {
      const int nx = x + sx[i];
      const int ny = y + sy[i];
      if (!m.in_bounds(nx, ny) || m.at(nx, ny) == Cell::Wall) continue;
      int& d = dist[static_cast<size_t>(ny) * width + nx];
      if (d >= 0) continue;
      d = dist[static_cast<size_t>(y) * width + x] + 1;
      q.emplace(nx, ny);
    }
  }
  int best = -1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int d = dist[static_cast<size_t>(y) * width + x];
      if (d > best) {
        best = d;
        m.goal_x = x;
        m.goal_y = y;
      }
    }
  }
  cell(m.goal_x, m.goal_y) = Cell::Goal;
  return m;
}

AgentPose step(const Maze& maze, const AgentPose& pose, Action action) {
  AgentPose next = pose;
  switch (action) {
    case Action::Left:
      next.heading = turn_left(pose.heading);
      return next;
    case Action::Right:
      next.heading = turn_right(pose.heading);
      return next;
    case Action::Forward: {
      int dx = 0, dy = 0;
      heading_delta(pose.heading, dx, dy);
      if (maze.at(pose.x + dx, pose.y + dy) != Cell::Wall) {
        next.x += dx;
        next.y += dy;
      }
      return next;
    }
  }
  return next;
}

Observation observe(const Maze& maze, const AgentPose& pose) {
  int fx = 0, fy = 0;
  heading_delta(pose.heading, fx, fy);
  // Right-hand vector: forward rotated 90 degrees clockwise.
  const int rx = fy;
  const int ry = -fx;

  Observation obs;
  obs.heading = pose.heading;
  for (int ly = 0; ly < kViewSize; ++ly) {
    for (int lx = 0; lx < kViewSize; ++lx) {
      const int wx = pose.x + (lx - 2) * rx + ly * fx;
      const int wy = pose.y + (lx - 2) * ry + ly * fy;
      obs.set(lx, ly, maze.at(wx, wy));
    }
  }
  return obs;
}

AgentPose start_pose(const Maze& maze) {
  return AgentPose{maze.start_x, maze.start_y, Heading::North};
}

}  // namespace mazegp::env
