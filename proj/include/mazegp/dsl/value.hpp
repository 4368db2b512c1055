#pragma once

#include <cassert>
#include <cstdint>
#include <string>

#include "mazegp/grid.hpp"

namespace mazegp::dsl {

// Result types of the DSL. Every AST node carries exactly one of these.
enum class TypeTag : uint8_t {
  Action,
  Int,
  AgentDirection,
  Map,
  Direction,
  Object,
  MapObject,
  Bool,
};

constexpr int kNumTypeTags = 8;

inline const char* to_string(TypeTag t) {
  switch (t) {
    case TypeTag::Action: return "action";
    case TypeTag::Int: return "int";
    case TypeTag::AgentDirection: return "agentDirection";
    case TypeTag::Map: return "map";
    case TypeTag::Direction: return "direction";
    case TypeTag::Object: return "object";
    case TypeTag::MapObject: return "mapObject";
    case TypeTag::Bool: return "bool";
  }
  return "?";
}

// A cell pulled off the map together with the coordinates it was read from.
struct MapObjectValue {
  Cell object = Cell::Wall;
  int8_t x = 0;
  int8_t y = 0;

  bool operator==(const MapObjectValue&) const = default;
};

// Runtime value: a tagged union over the eight DSL types. Map values hold a
// non-owning pointer to the observation bound to $1; they are only valid
// while that observation is alive (the single evaluate call, in practice).
class Value {
 public:
  Value() : tag_(TypeTag::Bool) { b_ = false; }

  static Value action(Action a) { Value v(TypeTag::Action); v.a_ = a; return v; }
  static Value integer(int i) { Value v(TypeTag::Int); v.i_ = i; return v; }
  static Value agent_direction(Heading h) { Value v(TypeTag::AgentDirection); v.h_ = h; return v; }
  static Value direction(Heading h) { Value v(TypeTag::Direction); v.h_ = h; return v; }
  static Value object(Cell c) { Value v(TypeTag::Object); v.c_ = c; return v; }
  static Value map_object(MapObjectValue mo) { Value v(TypeTag::MapObject); v.mo_ = mo; return v; }
  static Value boolean(bool b) { Value v(TypeTag::Bool); v.b_ = b; return v; }
  static Value map(const Observation* obs) { Value v(TypeTag::Map); v.m_ = obs; return v; }

  TypeTag tag() const { return tag_; }

  Action as_action() const { assert(tag_ == TypeTag::Action); return a_; }
  int as_int() const { assert(tag_ == TypeTag::Int); return i_; }
  Heading as_heading() const { assert(tag_ == TypeTag::AgentDirection || tag_ == TypeTag::Direction); return h_; }
  Cell as_object() const { assert(tag_ == TypeTag::Object); return c_; }
  MapObjectValue as_map_object() const { assert(tag_ == TypeTag::MapObject); return mo_; }
  bool as_bool() const { assert(tag_ == TypeTag::Bool); return b_; }
  const Observation* as_map() const { assert(tag_ == TypeTag::Map); return m_; }

  // Deep equality; map values compare observation contents.
  bool equals(const Value& o) const {
    if (tag_ != o.tag_) return false;
    switch (tag_) {
      case TypeTag::Action: return a_ == o.a_;
      case TypeTag::Int: return i_ == o.i_;
      case TypeTag::AgentDirection:
      case TypeTag::Direction: return h_ == o.h_;
      case TypeTag::Object: return c_ == o.c_;
      case TypeTag::MapObject: return mo_ == o.mo_;
      case TypeTag::Bool: return b_ == o.b_;
      case TypeTag::Map: return m_ == o.m_ || (m_ && o.m_ && *m_ == *o.m_);
    }
    return false;
  }

  // Canonical byte encoding used for abstraction cache keys. Map values are
  // encoded by content (25 cells + heading), never by pointer.
  void encode(std::string& out) const {
    out.push_back(static_cast<char>(tag_));
    switch (tag_) {
      case TypeTag::Action: out.push_back(static_cast<char>(a_)); break;
      case TypeTag::Int: {
        const int32_t i = i_;
        out.append(reinterpret_cast<const char*>(&i), sizeof(i));
        break;
      }
      case TypeTag::AgentDirection:
      case TypeTag::Direction: out.push_back(static_cast<char>(h_)); break;
      case TypeTag::Object: out.push_back(static_cast<char>(c_)); break;
      case TypeTag::MapObject:
        out.push_back(static_cast<char>(mo_.object));
        out.push_back(static_cast<char>(mo_.x));
        out.push_back(static_cast<char>(mo_.y));
        break;
      case TypeTag::Bool: out.push_back(b_ ? 1 : 0); break;
      case TypeTag::Map:
        for (Cell c : m_->grid) out.push_back(static_cast<char>(c));
        out.push_back(static_cast<char>(m_->heading));
        break;
    }
  }

  std::string describe() const {
    switch (tag_) {
      case TypeTag::Action: return std::string("action:") + mazegp::to_string(a_);
      case TypeTag::Int: return "int:" + std::to_string(i_);
      case TypeTag::AgentDirection: return std::string("agentDirection:") + mazegp::to_string(h_);
      case TypeTag::Direction: return std::string("direction:") + mazegp::to_string(h_);
      case TypeTag::Object: return std::string("object:") + to_char(c_);
      case TypeTag::MapObject:
        return std::string("mapObject:") + to_char(mo_.object) + "@(" + std::to_string(mo_.x) +
               "," + std::to_string(mo_.y) + ")";
      case TypeTag::Bool: return b_ ? "bool:true" : "bool:false";
      case TypeTag::Map: return "map";
    }
    return "?";
  }

 private:
  explicit Value(TypeTag t) : tag_(t) {}

  TypeTag tag_;
  union {
    Action a_;
    int32_t i_;
    Heading h_;
    Cell c_;
    MapObjectValue mo_;
    bool b_;
    const Observation* m_;
  };
};

}  // namespace mazegp::dsl
