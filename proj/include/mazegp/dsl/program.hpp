#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mazegp/dsl/grammar.hpp"

namespace mazegp::dsl {

// A well-formed AST stored as a preorder sequence of rule ids. Arity comes
// from the grammar, so the flat form is unambiguous; subtree i occupies the
// contiguous range [i, i + extent(i)). Immutable after construction and
// cheap to slice, which is what the GP operators live on.
class Program {
 public:
  Program() = default;

  // Validates that `nodes` forms exactly one complete tree under `g` (arity
  // counts only; use type_check for typing). Throws ArityError otherwise.
  static Program from_preorder(std::vector<RuleId> nodes, const Grammar& g);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }
  RuleId rule_at(int i) const { return nodes_[static_cast<size_t>(i)]; }
  int extent(int i) const { return extents_[static_cast<size_t>(i)]; }
  int depth() const { return depth_; }

  TypeTag return_type(const Grammar& g) const { return g.rule(nodes_[0]).ret; }

  // Position of the k-th child of the node at position i.
  int child(int i, int k) const {
    int c = i + 1;
    for (int j = 0; j < k; ++j) c += extent(c);
    return c;
  }

  std::span<const RuleId> nodes() const { return nodes_; }
  std::span<const int32_t> extents() const { return extents_; }

  bool operator==(const Program& o) const { return nodes_ == o.nodes_; }

 private:
  std::vector<RuleId> nodes_;
  std::vector<int32_t> extents_;
  int depth_ = 0;
};

// Computes subtree extents for a preorder node sequence where negative
// entries are leaves (pattern holes). Returns false if the sequence is not
// exactly one complete tree.
bool compute_extents(std::span<const int32_t> nodes, const Grammar& g,
                     std::vector<int32_t>& extents, int* depth_out = nullptr);

// Fills in Pattern::extents (and validates shape). Throws ArityError.
void finalize_pattern(Pattern& p, const Grammar& g);

}  // namespace mazegp::dsl
