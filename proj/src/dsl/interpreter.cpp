#include "mazegp/dsl/interpreter.hpp"

#include <algorithm>
#include <cassert>

#include "mazegp/common.hpp"

namespace mazegp::dsl {

namespace {

int clamp_index(int v) { return std::clamp(v, 0, kViewSize - 1); }

// One evaluation run. Abstraction calls are call-by-value: arguments are
// evaluated once, then the body runs with holes bound to those values (this
// is what the per-abstraction result cache is keyed on). The DSL is pure and
// total, so call-by-value agrees with inlining on results.
struct Machine {
  const Grammar& g;
  const Observation& obs;
  Heading heading;
  AbstractionCaches* caches;  // never set together with trace
  EvalTrace* trace;
  std::string key_buf;

  Value eval(const int32_t* nodes, const int32_t* extents, int pos,
             const std::vector<Value>& args) {
    const int32_t entry = nodes[pos];
    if (Pattern::is_hole(entry)) return args[static_cast<size_t>(Pattern::hole_index(entry))];

    const ProductionRule& rule = g.rule(entry);
    const int c0 = pos + 1;
    switch (rule.op) {
      case Opcode::ConstAction:
        return Value::action(static_cast<Action>(rule.payload));
      case Opcode::ConstInt:
        return Value::integer(rule.payload);
      case Opcode::ConstDirection:
        return Value::direction(static_cast<Heading>(rule.payload));
      case Opcode::ConstObject:
        return Value::object(static_cast<Cell>(rule.payload));
      case Opcode::Param0:
        return Value::agent_direction(heading);
      case Opcode::Param1:
        return Value::map(&obs);
      case Opcode::If: {
        const bool cond = eval(nodes, extents, c0, args).as_bool();
        const int c1 = c0 + extents[c0];
        const int c2 = c1 + extents[c1];
        return eval(nodes, extents, cond ? c1 : c2, args);
      }
      case Opcode::EqDirection: {
        const Heading lhs = eval(nodes, extents, c0, args).as_heading();
        const int c1 = c0 + extents[c0];
        const Heading rhs = eval(nodes, extents, c1, args).as_heading();
        const bool outcome = lhs == rhs;
        if (trace) trace->direction_comparisons.push_back({lhs, rhs, outcome});
        return Value::boolean(outcome);
      }
      case Opcode::EqObject: {
        const MapObjectValue mo = eval(nodes, extents, c0, args).as_map_object();
        const int c1 = c0 + extents[c0];
        const Cell rhs = eval(nodes, extents, c1, args).as_object();
        const bool outcome = mo.object == rhs;
        if (trace) trace->object_comparisons.push_back({mo.x, mo.y, rhs, outcome});
        return Value::boolean(outcome);
      }
      case Opcode::Get: {
        const Observation* m = eval(nodes, extents, c0, args).as_map();
        const int c1 = c0 + extents[c0];
        const int x = clamp_index(eval(nodes, extents, c1, args).as_int());
        const int c2 = c1 + extents[c1];
        const int y = clamp_index(eval(nodes, extents, c2, args).as_int());
        if (trace) {
          trace->accessed_cells.push_back({static_cast<int8_t>(x), static_cast<int8_t>(y)});
        }
        return Value::map_object({m->at(x, y), static_cast<int8_t>(x), static_cast<int8_t>(y)});
      }
      case Opcode::GetGameObj:
        return Value::object(eval(nodes, extents, c0, args).as_map_object().object);
      case Opcode::Not:
        return Value::boolean(!eval(nodes, extents, c0, args).as_bool());
      case Opcode::And: {
        if (!eval(nodes, extents, c0, args).as_bool()) return Value::boolean(false);
        const int c1 = c0 + extents[c0];
        return Value::boolean(eval(nodes, extents, c1, args).as_bool());
      }
      case Opcode::Or: {
        if (eval(nodes, extents, c0, args).as_bool()) return Value::boolean(true);
        const int c1 = c0 + extents[c0];
        return Value::boolean(eval(nodes, extents, c1, args).as_bool());
      }
      case Opcode::AbstractionCall: {
        std::vector<Value> call_args;
        call_args.reserve(rule.params.size());
        int c = c0;
        for (int k = 0; k < rule.arity(); ++k) {
          call_args.push_back(eval(nodes, extents, c, args));
          c += extents[c];
        }
        return call_abstraction(rule.payload, call_args);
      }
    }
    fail(ErrorCode::Internal, "unhandled opcode");
  }

  Value call_abstraction(int abstraction_index, const std::vector<Value>& call_args) {
    const Pattern& body = g.abstraction_body(abstraction_index);
    if (caches) {
      key_buf.clear();
      for (const Value& v : call_args) v.encode(key_buf);
      if (const Value* hit = caches->lookup(abstraction_index, key_buf)) return *hit;
      std::string key = key_buf;  // eval below reuses key_buf for nested calls
      const Value result = eval(body.nodes.data(), body.extents.data(), 0, call_args);
      // Map results would cache a pointer into a caller frame; skip them.
      if (result.tag() != TypeTag::Map) {
        caches->insert(abstraction_index, std::move(key), result);
      }
      return result;
    }
    return eval(body.nodes.data(), body.extents.data(), 0, call_args);
  }
};

const std::vector<Value> kNoArgs;

}  // namespace

Value evaluate(const Program& p, const Grammar& g, const Observation& obs, Heading heading,
               AbstractionCaches* caches) {
  if (caches) caches->ensure_size(g.num_abstractions());
  Machine m{g, obs, heading, caches, nullptr, {}};
  return m.eval(p.nodes().data(), p.extents().data(), 0, kNoArgs);
}

EvalTrace trace_evaluate(const Program& p, const Grammar& g, const Observation& obs,
                         Heading heading) {
  EvalTrace trace;
  Machine m{g, obs, heading, nullptr, &trace, {}};
  trace.result = m.eval(p.nodes().data(), p.extents().data(), 0, kNoArgs);
  return trace;
}

}  // namespace mazegp::dsl
