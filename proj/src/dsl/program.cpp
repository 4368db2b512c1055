#include "mazegp/dsl/program.hpp"

#include "mazegp/common.hpp"

namespace mazegp::dsl {

bool compute_extents(std::span<const int32_t> nodes, const Grammar& g,
                     std::vector<int32_t>& extents, int* depth_out) {
  const size_t n = nodes.size();
  extents.assign(n, 1);
  if (n == 0) return false;
  std::vector<int> depth(depth_out ? n : 0, 1);

  // Walk backwards; each node swallows the subtrees of its children, which
  // sit immediately to its right in preorder.
  for (size_t ri = n; ri-- > 0;) {
    const int32_t e = nodes[ri];
    int arity = 0;
    if (!Pattern::is_hole(e)) {
      if (e >= g.num_rules()) return false;
      arity = g.rule(e).arity();
    }
    int32_t span = 1;
    size_t c = ri + 1;
    int child_depth = 0;
    for (int k = 0; k < arity; ++k) {
      if (c >= n) return false;
      span += extents[c];
      if (depth_out) child_depth = std::max(child_depth, depth[c]);
      c += static_cast<size_t>(extents[c]);
    }
    extents[ri] = span;
    if (depth_out) depth[ri] = 1 + child_depth;
  }
  if (static_cast<size_t>(extents[0]) != n) return false;
  if (depth_out) *depth_out = depth[0];
  return true;
}

Program Program::from_preorder(std::vector<RuleId> nodes, const Grammar& g) {
  for (RuleId id : nodes) {
    if (id < 0 || id >= g.num_rules()) {
      fail(ErrorCode::ArityError, "node id out of range for grammar");
    }
  }
  Program p;
  std::vector<int32_t> extents;
  int depth = 0;
  std::span<const int32_t> view(nodes.data(), nodes.size());
  if (!compute_extents(view, g, extents, &depth)) {
    fail(ErrorCode::ArityError, "preorder sequence is not one complete tree");
  }
  p.nodes_ = std::move(nodes);
  p.extents_ = std::move(extents);
  p.depth_ = depth;
  return p;
}

void finalize_pattern(Pattern& p, const Grammar& g) {
  if (!compute_extents(p.nodes, g, p.extents, nullptr)) {
    fail(ErrorCode::ArityError, "pattern is not one complete tree");
  }
  if (p.nodes.empty()) fail(ErrorCode::ArityError, "empty pattern");
  if (Pattern::is_hole(p.nodes[0])) {
    p.return_type = p.hole_types[static_cast<size_t>(Pattern::hole_index(p.nodes[0]))];
  } else {
    p.return_type = g.rule(p.nodes[0]).ret;
  }
}

}  // namespace mazegp::dsl
