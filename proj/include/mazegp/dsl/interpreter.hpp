#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mazegp/dsl/program.hpp"

namespace mazegp::dsl {

// Per-abstraction result caches, keyed on the canonical encoding of the
// argument values. Transparent: results with caches on and off are equal on
// all inputs. One instance per worker; never shared across threads while
// being written.
class AbstractionCaches {
 public:
  void ensure_size(int num_abstractions) {
    if (static_cast<int>(maps_.size()) < num_abstractions) maps_.resize(num_abstractions);
  }

  const Value* lookup(int abstraction_index, const std::string& key) const {
    const auto& m = maps_[static_cast<size_t>(abstraction_index)];
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  }

  void insert(int abstraction_index, std::string key, const Value& v) {
    maps_[static_cast<size_t>(abstraction_index)].emplace(std::move(key), v);
  }

  void clear() {
    for (auto& m : maps_) m.clear();
  }

  size_t total_entries() const {
    size_t n = 0;
    for (const auto& m : maps_) n += m.size();
    return n;
  }

 private:
  std::vector<std::unordered_map<std::string, Value>> maps_;
};

// Everything a program inspected while producing its result on one
// observation. Only the taken execution path contributes: if/and/or are
// lazy, so cells behind an untaken branch never appear.
struct EvalTrace {
  struct CellAccess {
    int8_t x = 0;
    int8_t y = 0;
    bool operator==(const CellAccess&) const = default;
  };
  struct ObjectComparison {
    int8_t x = 0;
    int8_t y = 0;
    Cell compared = Cell::Wall;
    bool outcome = false;
    bool operator==(const ObjectComparison&) const = default;
  };
  struct DirectionComparison {
    Heading heading = Heading::North;
    Heading compared = Heading::North;
    bool outcome = false;
    bool operator==(const DirectionComparison&) const = default;
  };

  std::vector<CellAccess> accessed_cells;           // every executed `get`, in order
  std::vector<ObjectComparison> object_comparisons;
  std::vector<DirectionComparison> direction_comparisons;
  Value result;

  bool operator==(const EvalTrace& o) const {
    return accessed_cells == o.accessed_cells && object_comparisons == o.object_comparisons &&
           direction_comparisons == o.direction_comparisons && result.equals(o.result);
  }
};

// Pure evaluation. $1 binds to obs, $0 binds to heading. Well-typed
// programs cannot fault: `get` clamps its indices into 0..4 and the type
// system rules out tag mismatches.
Value evaluate(const Program& p, const Grammar& g, const Observation& obs, Heading heading,
               AbstractionCaches* caches = nullptr);

inline Value evaluate(const Program& p, const Grammar& g, const Observation& obs,
                      AbstractionCaches* caches = nullptr) {
  return evaluate(p, g, obs, obs.heading, caches);
}

// Same result as evaluate, plus the access/comparison record. Caches are
// not consulted: a hit would skip the body and drop its accesses, and the
// trace must be a pure function of (program, obs, heading).
EvalTrace trace_evaluate(const Program& p, const Grammar& g, const Observation& obs,
                         Heading heading);

inline EvalTrace trace_evaluate(const Program& p, const Grammar& g, const Observation& obs) {
  return trace_evaluate(p, g, obs, obs.heading);
}

}  // namespace mazegp::dsl
