#include "mazegp/liblearn/rewrite.hpp"

#include "mazegp/common.hpp"

namespace mazegp::liblearn {

using dsl::Grammar;
using dsl::Pattern;
using dsl::Program;
using dsl::RuleId;

namespace {

bool subtree_equal(const Program& p, int i, int j) {
  const int n = p.extent(i);
  if (p.extent(j) != n) return false;
  for (int k = 0; k < n; ++k) {
    if (p.rule_at(i + k) != p.rule_at(j + k)) return false;
  }
  return true;
}

// Matches the pattern's preorder against the program subtree at `pos`.
// On success, bind[k] holds the position of the subtree bound to hole k
// (its first occurrence; later occurrences were checked equal).
bool match_at(const Program& p, const Grammar& g, const Pattern& pat, int pos,
              std::vector<int>& bind) {
  bind.assign(static_cast<size_t>(pat.arity()), -1);
  int pp = pos;
  for (const int32_t e : pat.nodes) {
    if (Pattern::is_hole(e)) {
      const int k = Pattern::hole_index(e);
      int& slot = bind[static_cast<size_t>(k)];
      if (slot == -1) {
        if (g.rule(p.rule_at(pp)).ret != pat.hole_types[static_cast<size_t>(k)]) return false;
        slot = pp;
      } else if (!subtree_equal(p, pp, slot)) {
        return false;
      }
      pp += p.extent(pp);
    } else {
      if (p.rule_at(pp) != e) return false;
      ++pp;  // same rule, same arity: the preorders stay aligned
    }
  }
  return true;
}

void rewrite_at(const Program& p, const Grammar& g, const Pattern& pat, RuleId call_rule, int pos,
                std::vector<int>& bind, std::vector<RuleId>& out) {
  if (match_at(p, g, pat, pos, bind)) {
    out.push_back(call_rule);
    // Hole bindings are argument subtrees; they survive the rewrite and may
    // contain further occurrences themselves.
    const std::vector<int> args = bind;
    for (const int arg_pos : args) {
      rewrite_at(p, g, pat, call_rule, arg_pos, bind, out);
    }
    return;
  }
  out.push_back(p.rule_at(pos));
  int c = pos + 1;
  const int arity = g.rule(p.rule_at(pos)).arity();
  for (int k = 0; k < arity; ++k) {
    rewrite_at(p, g, pat, call_rule, c, bind, out);
    c += p.extent(c);
  }
}

struct View {
  const int32_t* nodes;
  const int32_t* extents;
};

void expand_at(View v, int pos, const std::vector<std::vector<RuleId>>& args, const Grammar& g,
               std::vector<RuleId>& out) {
  const int32_t e = v.nodes[pos];
  if (Pattern::is_hole(e)) {
    const auto& a = args[static_cast<size_t>(Pattern::hole_index(e))];
    out.insert(out.end(), a.begin(), a.end());
    return;
  }
  const auto& rule = g.rule(e);
  if (rule.op == dsl::Opcode::AbstractionCall) {
    std::vector<std::vector<RuleId>> call_args(static_cast<size_t>(rule.arity()));
    int c = pos + 1;
    for (int k = 0; k < rule.arity(); ++k) {
      expand_at(v, c, args, g, call_args[static_cast<size_t>(k)]);
      c += v.extents[c];
    }
    const Pattern& body = g.abstraction_body(rule.payload);
    expand_at(View{body.nodes.data(), body.extents.data()}, 0, call_args, g, out);
    return;
  }
  out.push_back(e);
  int c = pos + 1;
  for (int k = 0; k < rule.arity(); ++k) {
    expand_at(v, c, args, g, out);
    c += v.extents[c];
  }
}

}  // namespace

Program rewrite_program(const Program& p, const Grammar& g, RuleId abstraction_rule) {
  const auto& rule = g.rule(abstraction_rule);
  if (rule.op != dsl::Opcode::AbstractionCall) {
    fail(ErrorCode::Internal, "rewrite_program needs an abstraction rule");
  }
  const Pattern& pat = g.abstraction_body(rule.payload);
  std::vector<RuleId> out;
  out.reserve(static_cast<size_t>(p.size()));
  std::vector<int> bind;
  rewrite_at(p, g, pat, abstraction_rule, 0, bind, out);
  return Program::from_preorder(std::move(out), g);
}

std::vector<Program> rewrite_corpus(const std::vector<Program>& corpus, const Grammar& g,
                                    RuleId abstraction_rule) {
  std::vector<Program> out;
  out.reserve(corpus.size());
  for (const Program& p : corpus) out.push_back(rewrite_program(p, g, abstraction_rule));
  return out;
}

Program expand_abstractions(const Program& p, const Grammar& g) {
  std::vector<RuleId> out;
  out.reserve(static_cast<size_t>(p.size()));
  const std::vector<std::vector<RuleId>> no_args;
  std::span<const int32_t> nodes(p.nodes().data(), p.nodes().size());
  expand_at(View{nodes.data(), p.extents().data()}, 0, no_args, g, out);
  return Program::from_preorder(std::move(out), g);
}

}  // namespace mazegp::liblearn
