#include "mazegp/dsl/grammar.hpp"

#include <algorithm>
#include <sstream>

#include "mazegp/common.hpp"
#include "mazegp/dsl/program.hpp"

namespace mazegp::dsl {

namespace {

ProductionRule terminal(std::string name, TypeTag ret, Opcode op, int32_t payload) {
  ProductionRule r;
  r.name = std::move(name);
  r.ret = ret;
  r.kind = RuleKind::Terminal;
  r.op = op;
  r.payload = payload;
  return r;
}

ProductionRule parameter(std::string name, TypeTag ret, Opcode op) {
  ProductionRule r;
  r.name = std::move(name);
  r.ret = ret;
  r.kind = RuleKind::Parameter;
  r.op = op;
  return r;
}

ProductionRule builtin(std::string name, std::vector<TypeTag> params, TypeTag ret, Opcode op) {
  ProductionRule r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.ret = ret;
  r.kind = RuleKind::Builtin;
  r.op = op;
  return r;
}

}  // namespace

Grammar Grammar::base() {
  using T = TypeTag;
  Grammar g;

  g.add_rule(terminal("left-action", T::Action, Opcode::ConstAction, static_cast<int>(Action::Left)));
  g.add_rule(terminal("right-action", T::Action, Opcode::ConstAction, static_cast<int>(Action::Right)));
  g.add_rule(terminal("forward-action", T::Action, Opcode::ConstAction, static_cast<int>(Action::Forward)));

  for (int i = 0; i <= 5; ++i) {
    g.add_rule(terminal(std::to_string(i), T::Int, Opcode::ConstInt, i));
  }

  g.add_rule(parameter("$0", T::AgentDirection, Opcode::Param0));
  g.add_rule(parameter("$1", T::Map, Opcode::Param1));

  for (int i = 0; i <= 3; ++i) {
    g.add_rule(terminal("direction-" + std::to_string(i), T::Direction, Opcode::ConstDirection, i));
  }

  g.add_rule(terminal("wall-obj", T::Object, Opcode::ConstObject, static_cast<int>(Cell::Wall)));
  g.add_rule(terminal("empty-obj", T::Object, Opcode::ConstObject, static_cast<int>(Cell::Empty)));
  g.add_rule(terminal("goal-obj", T::Object, Opcode::ConstObject, static_cast<int>(Cell::Goal)));

  // One if per value type; there is no generic if.
  const std::pair<const char*, T> if_types[] = {
      {"if_action", T::Action}, {"if_object", T::Object},   {"if_mapObject", T::MapObject},
      {"if_direction", T::Direction}, {"if_int", T::Int},   {"if_bool", T::Bool},
  };
  for (const auto& [name, t] : if_types) {
    g.add_rule(builtin(name, {T::Bool, t, t}, t, Opcode::If));
  }

  g.add_rule(builtin("eq-direction?", {T::AgentDirection, T::Direction}, T::Bool, Opcode::EqDirection));
  g.add_rule(builtin("eq-obj?", {T::MapObject, T::Object}, T::Bool, Opcode::EqObject));
  g.add_rule(builtin("get", {T::Map, T::Int, T::Int}, T::MapObject, Opcode::Get));
  g.add_rule(builtin("get-game-obj", {T::MapObject}, T::Object, Opcode::GetGameObj));
  g.add_rule(builtin("not", {T::Bool}, T::Bool, Opcode::Not));
  g.add_rule(builtin("and", {T::Bool, T::Bool}, T::Bool, Opcode::And));
  g.add_rule(builtin("or", {T::Bool, T::Bool}, T::Bool, Opcode::Or));

  g.recompute_min_depths();
  return g;
}

void Grammar::add_rule(ProductionRule r) {
  if (by_name_.count(r.name)) {
    fail(ErrorCode::DuplicateName, "rule '" + r.name + "' already in grammar");
  }
  const RuleId id = static_cast<RuleId>(rules_.size());
  by_name_.emplace(r.name, id);
  by_type_[static_cast<size_t>(r.ret)].push_back(id);
  rules_.push_back(std::move(r));
}

int Grammar::min_depth_of_rule(RuleId id) const {
  const ProductionRule& r = rule(id);
  int worst = 0;
  for (TypeTag t : r.params) worst = std::max(worst, min_depth(t));
  return worst >= kUnreachableDepth ? kUnreachableDepth : 1 + worst;
}

void Grammar::recompute_min_depths() {
  min_depth_.fill(kUnreachableDepth);
  for (bool changed = true; changed;) {
    changed = false;
    for (const ProductionRule& r : rules_) {
      int worst = 0;
      for (TypeTag t : r.params) worst = std::max(worst, min_depth(t));
      if (worst >= kUnreachableDepth) continue;
      const int d = 1 + worst;
      int& slot = min_depth_[static_cast<size_t>(r.ret)];
      if (d < slot) {
        slot = d;
        changed = true;
      }
    }
  }
}

RuleId Grammar::add_abstraction(const std::string& name, Pattern body) {
  if (by_name_.count(name)) {
    fail(ErrorCode::DuplicateName, "rule '" + name + "' already in grammar");
  }
  finalize_pattern(body, *this);
  ProductionRule r;
  r.name = name;
  r.params = body.hole_types;
  r.ret = body.return_type;
  r.kind = RuleKind::Abstraction;
  r.op = Opcode::AbstractionCall;
  r.payload = static_cast<int32_t>(bodies_.size());
  add_rule(std::move(r));
  const RuleId id = static_cast<RuleId>(rules_.size()) - 1;
  bodies_.push_back(std::move(body));
  abstraction_rules_.push_back(id);
  recompute_min_depths();
  return id;
}

std::string Grammar::dump() const {
  std::ostringstream os;
  for (const ProductionRule& r : rules_) {
    os << r.name << " : ";
    for (TypeTag t : r.params) os << to_string(t) << " -> ";
    os << to_string(r.ret) << "\n";
  }
  return os.str();
}

}  // namespace mazegp::dsl
