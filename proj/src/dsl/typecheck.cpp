#include "mazegp/dsl/typecheck.hpp"

#include <sstream>

namespace mazegp::dsl {

std::string TypeViolation::describe() const {
  std::ostringstream os;
  os << "root";
  for (int k : path) os << "." << k;
  os << ": expected " << to_string(expected) << ", got " << to_string(actual);
  return os.str();
}

namespace {

void check_node(const Program& p, const Grammar& g, int pos, std::vector<int>& path,
                std::vector<TypeViolation>& out) {
  const ProductionRule& rule = g.rule(p.rule_at(pos));
  int c = pos + 1;
  for (int k = 0; k < rule.arity(); ++k) {
    const TypeTag want = rule.params[static_cast<size_t>(k)];
    const TypeTag got = g.rule(p.rule_at(c)).ret;
    path.push_back(k);
    if (got != want) out.push_back({path, want, got});
    check_node(p, g, c, path, out);
    path.pop_back();
    c += p.extent(c);
  }
}

}  // namespace

std::vector<TypeViolation> type_check(const Program& p, const Grammar& g) {
  std::vector<TypeViolation> out;
  if (p.empty()) return out;
  std::vector<int> path;
  check_node(p, g, 0, path, out);
  return out;
}

}  // namespace mazegp::dsl
