#include "mazegp/liblearn/miner.hpp"

#include <algorithm>
#include <map>

#include "mazegp/common.hpp"
#include "mazegp/liblearn/rewrite.hpp"

namespace mazegp::liblearn {

using dsl::Grammar;
using dsl::Pattern;
using dsl::Program;
using dsl::RuleId;
using dsl::RuleKind;
using dsl::TypeTag;

namespace {

constexpr int32_t kUndecided = INT32_MIN;

struct PatEntry {
  int32_t code;  // RuleId, Pattern::hole_entry(k), or kUndecided
  TypeTag type;  // result type required at this position
};

// Matches are stored flat: (program, root, leaf positions...) with a fixed
// stride per search state. Leaf j is the j-th hole-or-undecided entry of the
// pattern in preorder.
struct State {
  std::vector<PatEntry> entries;
  std::vector<TypeTag> hole_types;
  std::vector<int32_t> matches;
  int leaf_count = 0;

  int stride() const { return 2 + leaf_count; }
  size_t match_count() const {
    return matches.empty() ? 0 : matches.size() / static_cast<size_t>(stride());
  }
};

struct Candidate {
  Pattern pattern;
  int occurrences = 0;
  long utility = 0;
};

struct Miner {
  const Grammar& g;
  const std::vector<Program>& corpus;
  int size_limit;
  long budget;  // search-node guard; generous, deterministic
  Candidate best;

  int concrete_count(const State& s) const {
    int n = 0;
    for (const PatEntry& e : s.entries) n += (e.code >= 0) ? 1 : 0;
    return n;
  }

  // Exact number of greedy top-down rewrite applications (matches whose root
  // is not inside the concrete region of an already-applied match).
  int applied_count(const State& s) const {
    struct Applied {
      int32_t end;
      const int32_t* leaves;
    };
    int count = 0;
    std::vector<Applied> stack;
    const int stride = s.stride();
    int32_t prev_prog = -1;
    for (size_t base = 0; base < s.matches.size(); base += static_cast<size_t>(stride)) {
      const int32_t prog = s.matches[base];
      const int32_t root = s.matches[base + 1];
      const Program& p = corpus[static_cast<size_t>(prog)];
      if (prog != prev_prog) {
        stack.clear();
        prev_prog = prog;
      }
      while (!stack.empty() && stack.back().end <= root) stack.pop_back();
      bool inside_argument = stack.empty();
      if (!stack.empty()) {
        const Applied& top = stack.back();
        for (int j = 0; j < s.leaf_count && !inside_argument; ++j) {
          const int32_t lp = top.leaves[j];
          inside_argument = root >= lp && root < lp + p.extent(lp);
        }
      }
      if (!inside_argument) continue;
      ++count;
      stack.push_back({root + p.extent(root), &s.matches[base + 2]});
    }
    return count;
  }

  void consider(const State& s) {
    const int concrete = concrete_count(s);
    if (concrete < 2 || concrete >= size_limit) return;
    const int occurrences = applied_count(s);
    const long utility = static_cast<long>(occurrences - 1) * (concrete - 1);
    // Utility ties go to the pattern with fewer arguments: a reused hole
    // drops one argument from every call site.
    const bool better =
        utility > best.utility ||
        (utility == best.utility && best.utility > 0 &&
         static_cast<int>(s.hole_types.size()) < best.pattern.arity());
    if (!better) return;

    Pattern pat;
    pat.nodes.reserve(s.entries.size());
    for (const PatEntry& e : s.entries) pat.nodes.push_back(e.code);
    pat.hole_types = s.hole_types;
    finalize_pattern(pat, g);

    for (int i = 0; i < g.num_abstractions(); ++i) {
      if (alpha_equivalent(pat, g.abstraction_body(i))) return;
    }
    best = {std::move(pat), occurrences, utility};
  }

  void search(const State& s) {
    if (budget-- <= 0) return;
    if (s.match_count() < 2) return;
    // No refinement can beat the best: occurrences only shrink and
    // concrete size tops out at size_limit - 1.
    const long bound =
        (static_cast<long>(s.match_count()) - 1) * (size_limit - 2);
    if (bound <= best.utility) return;

    // Leftmost undecided leaf; if none the pattern is complete.
    int entry_ix = -1;
    int leaf_ix = 0;
    for (size_t i = 0; i < s.entries.size(); ++i) {
      const int32_t code = s.entries[i].code;
      if (code == kUndecided) {
        entry_ix = static_cast<int>(i);
        break;
      }
      if (code < 0) ++leaf_ix;
    }
    if (entry_ix == -1) {
      consider(s);
      return;
    }
    const TypeTag leaf_type = s.entries[static_cast<size_t>(entry_ix)].type;
    const int stride = s.stride();

    // Branch 1: specialize with each rule that occurs at this position in
    // the matches. Parameters are never embedded; those positions stay
    // arguments. Rules in ascending id order for determinism.
    if (concrete_count(s) < size_limit - 1) {
      std::map<RuleId, std::vector<size_t>> by_rule;
      for (size_t base = 0; base < s.matches.size(); base += static_cast<size_t>(stride)) {
        const Program& p = corpus[static_cast<size_t>(s.matches[base])];
        const RuleId r = p.rule_at(s.matches[base + 2 + static_cast<size_t>(leaf_ix)]);
        if (g.rule(r).kind == RuleKind::Parameter) continue;
        by_rule[r].push_back(base);
      }
      for (const auto& [rule_id, bases] : by_rule) {
        if (bases.size() < 2) continue;
        const auto& rule = g.rule(rule_id);
        const int arity = rule.arity();

        State next;
        next.entries.reserve(s.entries.size() + static_cast<size_t>(arity));
        next.entries.assign(s.entries.begin(), s.entries.begin() + entry_ix);
        next.entries.push_back({rule_id, rule.ret});
        for (int k = 0; k < arity; ++k) {
          next.entries.push_back({kUndecided, rule.params[static_cast<size_t>(k)]});
        }
        next.entries.insert(next.entries.end(), s.entries.begin() + entry_ix + 1,
                            s.entries.end());
        next.hole_types = s.hole_types;
        next.leaf_count = s.leaf_count - 1 + arity;
        next.matches.reserve(bases.size() * static_cast<size_t>(next.stride()));
        for (const size_t base : bases) {
          const Program& p = corpus[static_cast<size_t>(s.matches[base])];
          next.matches.push_back(s.matches[base]);
          next.matches.push_back(s.matches[base + 1]);
          for (int j = 0; j < leaf_ix; ++j) {
            next.matches.push_back(s.matches[base + 2 + static_cast<size_t>(j)]);
          }
          int c = s.matches[base + 2 + static_cast<size_t>(leaf_ix)] + 1;
          for (int k = 0; k < arity; ++k) {
            next.matches.push_back(c);
            c += p.extent(c);
          }
          for (int j = leaf_ix + 1; j < s.leaf_count; ++j) {
            next.matches.push_back(s.matches[base + 2 + static_cast<size_t>(j)]);
          }
        }
        search(next);
      }
    }

    const bool at_root = s.entries.size() == 1;
    if (at_root) return;  // a bare hole is not an abstraction

    // Branch 2: fresh argument.
    if (static_cast<int>(s.hole_types.size()) < kMaxHoles) {
      State next = s;
      next.entries[static_cast<size_t>(entry_ix)].code =
          Pattern::hole_entry(static_cast<int>(s.hole_types.size()));
      next.hole_types.push_back(leaf_type);
      search(next);
    }

    // Branch 3: reuse an earlier argument of the same type; keeps only the
    // matches whose subtree here equals the one already bound to it.
    for (size_t m = 0; m < s.hole_types.size(); ++m) {
      if (s.hole_types[m] != leaf_type) continue;
      int first_leaf = -1;
      int lj = 0;
      for (const PatEntry& e : s.entries) {
        if (e.code >= 0) continue;
        if (e.code == Pattern::hole_entry(static_cast<int>(m))) {
          first_leaf = lj;
          break;
        }
        ++lj;
      }
      if (first_leaf == -1) continue;

      State next;
      next.entries = s.entries;
      next.entries[static_cast<size_t>(entry_ix)].code =
          Pattern::hole_entry(static_cast<int>(m));
      next.hole_types = s.hole_types;
      next.leaf_count = s.leaf_count;
      for (size_t base = 0; base < s.matches.size(); base += static_cast<size_t>(stride)) {
        const Program& p = corpus[static_cast<size_t>(s.matches[base])];
        const int32_t here = s.matches[base + 2 + static_cast<size_t>(leaf_ix)];
        const int32_t there = s.matches[base + 2 + static_cast<size_t>(first_leaf)];
        const int n = p.extent(here);
        if (p.extent(there) != n) continue;
        bool equal = true;
        for (int k = 0; k < n && equal; ++k) {
          equal = p.rule_at(here + k) == p.rule_at(there + k);
        }
        if (!equal) continue;
        next.matches.insert(next.matches.end(), s.matches.begin() + base,
                            s.matches.begin() + base + static_cast<size_t>(stride));
      }
      search(next);
    }
  }
};

Candidate mine_one(const Grammar& g, const std::vector<Program>& corpus, int size_limit) {
  Miner miner{g, corpus, size_limit, /*budget=*/2'000'000, {}};

  // One root state per result type; roots must be rules, so this enumerates
  // every pattern exactly once.
  for (int t = 0; t < dsl::kNumTypeTags; ++t) {
    const TypeTag type = static_cast<TypeTag>(t);
    State s;
    s.entries.push_back({kUndecided, type});
    s.leaf_count = 1;
    for (size_t pi = 0; pi < corpus.size(); ++pi) {
      const Program& p = corpus[pi];
      for (int pos = 0; pos < p.size(); ++pos) {
        if (g.rule(p.rule_at(pos)).ret != type) continue;
        s.matches.push_back(static_cast<int32_t>(pi));
        s.matches.push_back(pos);
        s.matches.push_back(pos);
      }
    }
    miner.search(s);
  }
  return std::move(miner.best);
}

}  // namespace

std::vector<MinedAbstraction> mine_abstractions(const std::vector<Program>& corpus,
                                                const Grammar& grammar, int size_limit,
                                                int count_limit) {
  if (corpus.empty()) return {};
  if (size_limit < 2 || count_limit < 1) {
    fail(ErrorCode::Internal, "mine_abstractions needs size_limit >= 2 and count_limit >= 1");
  }

  Grammar scratch = grammar;
  std::vector<Program> working = corpus;
  std::vector<MinedAbstraction> out;
  for (int round = 0; round < count_limit; ++round) {
    Candidate cand = mine_one(scratch, working, size_limit);
    if (cand.utility <= 0) break;
    MinedAbstraction mined;
    mined.abstraction.name = "fn_" + std::to_string(scratch.num_abstractions());
    mined.abstraction.body = cand.pattern;
    mined.occurrences = cand.occurrences;
    mined.utility = cand.utility;
    const RuleId id = register_abstraction(scratch, mined.abstraction);
    working = rewrite_corpus(working, scratch, id);
    out.push_back(std::move(mined));
  }
  return out;
}

}  // namespace mazegp::liblearn
