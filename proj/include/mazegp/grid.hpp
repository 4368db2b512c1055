#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mazegp/common.hpp"

namespace mazegp {

enum class Action : uint8_t { Left, Right, Forward };

enum class Cell : uint8_t { Wall, Empty, Goal };

// Cardinal headings. World frame: x grows east, y grows north, so
// direction-0..direction-3 read as north, east, south, west.
enum class Heading : uint8_t { North, East, South, West };

constexpr int kViewSize = 5;

// Egocentric 5x5 window. Local x is lateral (0 = far left, 4 = far right),
// local y is forward distance. The agent sits at (2,0) looking toward
// increasing y, so (2,1) is the cell directly ahead.
struct Observation {
  std::array<Cell, kViewSize * kViewSize> grid{};
  Heading heading = Heading::North;

  Cell at(int x, int y) const { return grid[static_cast<size_t>(y) * kViewSize + x]; }
  void set(int x, int y, Cell c) { grid[static_cast<size_t>(y) * kViewSize + x] = c; }

  bool operator==(const Observation&) const = default;
};

inline char to_char(Cell c) {
  switch (c) {
    case Cell::Wall: return 'w';
    case Cell::Empty: return 'e';
    case Cell::Goal: return 'g';
  }
  return '?';
}

inline Cell cell_from_char(char ch) {
  switch (ch) {
    case 'w': return Cell::Wall;
    case 'e': return Cell::Empty;
    case 'g': return Cell::Goal;
  }
  fail(ErrorCode::DataError, std::string("unknown cell code '") + ch + "'");
}

inline const char* to_string(Action a) {
  switch (a) {
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Forward: return "forward";
  }
  return "?";
}

inline Action action_from_string(const std::string& s) {
  if (s == "left") return Action::Left;
  if (s == "right") return Action::Right;
  if (s == "forward") return Action::Forward;
  fail(ErrorCode::DataError, "unknown action '" + s + "'");
}

inline const char* to_string(Heading h) {
  switch (h) {
    case Heading::North: return "north";
    case Heading::East: return "east";
    case Heading::South: return "south";
    case Heading::West: return "west";
  }
  return "?";
}

inline Heading turn_left(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}

inline Heading turn_right(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

// Unit vector of a heading in world coordinates (x east, y north).
inline void heading_delta(Heading h, int& dx, int& dy) {
  switch (h) {
    case Heading::North: dx = 0; dy = 1; return;
    case Heading::East: dx = 1; dy = 0; return;
    case Heading::South: dx = 0; dy = -1; return;
    case Heading::West: dx = -1; dy = 0; return;
  }
  dx = dy = 0;
}

inline std::string grid_codes(const Observation& obs) {
  std::string s;
  s.reserve(kViewSize * kViewSize);
  for (Cell c : obs.grid) s.push_back(to_char(c));
  return s;
}

inline Observation observation_from_codes(const std::string& codes, int heading) {
  if (codes.size() != kViewSize * kViewSize) {
    fail(ErrorCode::DataError, "grid must have 25 cell codes, got " + std::to_string(codes.size()));
  }
  if (heading < 0 || heading > 3) {
    fail(ErrorCode::DataError, "heading must be in 0..3, got " + std::to_string(heading));
  }
  Observation obs;
  for (size_t i = 0; i < codes.size(); ++i) obs.grid[i] = cell_from_char(codes[i]);
  obs.heading = static_cast<Heading>(heading);
  return obs;
}

}  // namespace mazegp
