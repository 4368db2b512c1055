#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mazegp/dsl/value.hpp"

namespace mazegp::dsl {

using RuleId = int32_t;
constexpr RuleId kNoRule = -1;

enum class RuleKind : uint8_t { Builtin, Terminal, Parameter, Abstraction };

// Interpreter dispatch code. One code per builtin; constants carry their
// payload in ProductionRule::payload.
enum class Opcode : uint8_t {
  ConstAction,
  ConstInt,
  ConstDirection,
  ConstObject,
  Param0,
  Param1,
  If,
  EqDirection,
  EqObject,
  Get,
  GetGameObj,
  Not,
  And,
  Or,
  AbstractionCall,
};

struct ProductionRule {
  std::string name;
  std::vector<TypeTag> params;
  TypeTag ret = TypeTag::Bool;
  RuleKind kind = RuleKind::Builtin;
  Opcode op = Opcode::Not;
  int32_t payload = 0;  // literal value, or abstraction index for calls

  int arity() const { return static_cast<int>(params.size()); }
  bool is_leaf() const { return params.empty(); }
};

// A program template whose leaves may be argument holes (#0, #1, ...). Used
// as the body of library abstractions and as the unit the miner searches
// over. Stored in preorder like Program; negative entries are holes.
struct Pattern {
  static constexpr int32_t hole_entry(int k) { return -(k + 1); }
  static bool is_hole(int32_t e) { return e < 0; }
  static int hole_index(int32_t e) { return -e - 1; }

  std::vector<int32_t> nodes;
  std::vector<int32_t> extents;     // subtree size per position
  std::vector<TypeTag> hole_types;  // indexed by hole number
  TypeTag return_type = TypeTag::Bool;

  int arity() const { return static_cast<int>(hole_types.size()); }
  int concrete_size() const {
    int n = 0;
    for (int32_t e : nodes) n += is_hole(e) ? 0 : 1;
    return n;
  }
};

// The production-rule set. The base set is the Table-1 DSL; mined
// abstractions extend it at runtime. Extension only appends, so RuleIds held
// by existing programs stay valid. Immutable once shared across workers.
class Grammar {
 public:
  static Grammar base();

  RuleId find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? kNoRule : it->second;
  }
  const ProductionRule& rule(RuleId id) const { return rules_[static_cast<size_t>(id)]; }
  int num_rules() const { return static_cast<int>(rules_.size()); }

  const std::vector<RuleId>& rules_returning(TypeTag t) const {
    return by_type_[static_cast<size_t>(t)];
  }

  // Minimum tree depth needed to produce a value of the given type
  // (kUnreachableDepth if no finite program exists).
  static constexpr int kUnreachableDepth = 1 << 20;
  int min_depth(TypeTag t) const { return min_depth_[static_cast<size_t>(t)]; }
  int min_depth_of_rule(RuleId id) const;

  // Registers a mined abstraction as a new production rule. The body's holes
  // become the rule's parameters. Throws DuplicateName.
  RuleId add_abstraction(const std::string& name, Pattern body);

  int num_abstractions() const { return static_cast<int>(bodies_.size()); }
  const Pattern& abstraction_body(int abstraction_index) const {
    return bodies_[static_cast<size_t>(abstraction_index)];
  }
  RuleId abstraction_rule(int abstraction_index) const {
    return abstraction_rules_[static_cast<size_t>(abstraction_index)];
  }

  // Human-readable rule listing for run reports.
  std::string dump() const;

 private:
  void add_rule(ProductionRule r);
  void recompute_min_depths();

  std::vector<ProductionRule> rules_;
  std::array<std::vector<RuleId>, kNumTypeTags> by_type_;
  std::unordered_map<std::string, RuleId> by_name_;
  std::array<int, kNumTypeTags> min_depth_{};
  std::vector<Pattern> bodies_;
  std::vector<RuleId> abstraction_rules_;
};

}  // namespace mazegp::dsl
