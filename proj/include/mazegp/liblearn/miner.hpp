#pragma once

#include <vector>

#include "mazegp/liblearn/abstraction.hpp"

namespace mazegp::liblearn {

struct MinedAbstraction {
  Abstraction abstraction;
  int occurrences = 0;  // non-overlapping, across the (rewritten) corpus
  long utility = 0;     // (occurrences - 1) * (concrete_size - 1)
};

// Corpus-guided top-down search for the patterns that compress the corpus
// best. Starting from a single typed hole, one hole at a time is either
// specialized with a rule that actually occurs at the matching positions,
// kept as a fresh argument, or unified with an earlier argument of the same
// type. Parameters ($0/$1) are never embedded in a body; positions holding
// them become arguments, so bodies abstract over the observation the way
// the seed library does.
//
// Selection is greedy: the best pattern by utility is accepted, the working
// corpus is rewritten with it (later patterns may therefore call earlier
// ones), and the search repeats, up to count_limit patterns with
// concrete_size < size_limit and utility > 0. Candidates alpha-equivalent
// to an already-registered body (or to one accepted earlier in this round)
// are skipped.
//
// `grammar` is copied internally; the caller must register the returned
// abstractions in order (their bodies may reference the rule ids the
// registrations will create). Names are fn_<k> starting at the number of
// abstractions already in the grammar.
std::vector<MinedAbstraction> mine_abstractions(const std::vector<dsl::Program>& corpus,
                                                const dsl::Grammar& grammar, int size_limit,
                                                int count_limit);

// Maximum number of distinct holes in a mined pattern.
constexpr int kMaxHoles = 4;

}  // namespace mazegp::liblearn
