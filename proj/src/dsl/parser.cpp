#include "mazegp/dsl/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "mazegp/common.hpp"

namespace mazegp::dsl {

namespace {

struct Token {
  enum Kind { LParen, RParen, Symbol } kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::RParen, ")"});
      ++i;
    } else {
      size_t j = i;
      while (j < text.size() && text[j] != '(' && text[j] != ')' && text[j] != ';' &&
             !std::isspace(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      out.push_back({Token::Symbol, std::string(text.substr(i, j - i))});
      i = j;
    }
  }
  return out;
}

struct Sexpr {
  bool is_list = false;
  std::string symbol;
  std::vector<Sexpr> children;
};

Sexpr parse_sexpr(const std::vector<Token>& toks, size_t& pos) {
  if (pos >= toks.size()) fail(ErrorCode::SyntaxError, "unexpected end of input");
  const Token& t = toks[pos];
  if (t.kind == Token::Symbol) {
    ++pos;
    Sexpr s;
    s.symbol = t.text;
    return s;
  }
  if (t.kind == Token::RParen) fail(ErrorCode::SyntaxError, "unexpected ')'");
  ++pos;  // consume '('
  Sexpr s;
  s.is_list = true;
  while (true) {
    if (pos >= toks.size()) fail(ErrorCode::SyntaxError, "missing ')'");
    if (toks[pos].kind == Token::RParen) {
      ++pos;
      break;
    }
    s.children.push_back(parse_sexpr(toks, pos));
  }
  if (s.children.empty()) fail(ErrorCode::SyntaxError, "empty application '()'");
  if (s.children.front().is_list) {
    fail(ErrorCode::SyntaxError, "operator position must be a rule name");
  }
  return s;
}

std::string path_string(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::ostringstream os;
  os << "root";
  for (int k : path) os << "." << k;
  return os.str();
}

bool is_hole_symbol(const std::string& s, int& index) {
  if (s.size() < 2 || s[0] != '#') return false;
  for (size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  index = std::stoi(s.substr(1));
  return true;
}

class Builder {
 public:
  Builder(const Grammar& g, bool allow_holes) : g_(g), allow_holes_(allow_holes) {}

  // Emits the subtree in preorder, returns its result type.
  TypeTag build(const Sexpr& s, std::optional<TypeTag> expected, std::vector<int>& path) {
    if (!s.is_list) return build_leaf(s.symbol, expected, path);

    const std::string& name = s.children.front().symbol;
    int hole_ix = 0;
    if (is_hole_symbol(name, hole_ix)) {
      fail(ErrorCode::SyntaxError, "hole cannot be applied at " + path_string(path));
    }
    const RuleId id = g_.find(name);
    if (id == kNoRule) {
      fail(ErrorCode::UnknownSymbol, "'" + name + "' at " + path_string(path));
    }
    const ProductionRule& rule = g_.rule(id);
    const int argc = static_cast<int>(s.children.size()) - 1;
    if (argc != rule.arity()) {
      fail(ErrorCode::ArityError, "'" + name + "' expects " + std::to_string(rule.arity()) +
                                      " arguments, got " + std::to_string(argc) + " at " +
                                      path_string(path));
    }

    // Canonical eq-obj? order is (mapObject, object); the flipped spelling
    // is accepted and normalized.
    const Sexpr* args[2] = {nullptr, nullptr};
    std::vector<const Sexpr*> children;
    children.reserve(static_cast<size_t>(argc));
    for (int k = 0; k < argc; ++k) children.push_back(&s.children[static_cast<size_t>(k) + 1]);
    if (rule.op == Opcode::EqObject && argc == 2) {
      const auto t0 = apparent_type(*children[0]);
      const auto t1 = apparent_type(*children[1]);
      if (t0 == TypeTag::Object && t1 == TypeTag::MapObject) std::swap(children[0], children[1]);
    }
    (void)args;

    nodes_.push_back(id);
    for (int k = 0; k < argc; ++k) {
      path.push_back(k);
      const TypeTag want = rule.params[static_cast<size_t>(k)];
      const TypeTag got = build(*children[static_cast<size_t>(k)], want, path);
      if (got != want) {
        fail(ErrorCode::TypeMismatch, "at " + path_string(path) + ": expected " +
                                          std::string(to_string(want)) + ", got " + to_string(got));
      }
      path.pop_back();
    }
    check_expected(rule.ret, expected, path);
    return rule.ret;
  }

  std::vector<int32_t> take_nodes() { return std::move(nodes_); }
  const std::vector<std::optional<TypeTag>>& hole_types() const { return hole_types_; }

 private:
  TypeTag build_leaf(const std::string& sym, std::optional<TypeTag> expected,
                     std::vector<int>& path) {
    int hole_ix = 0;
    if (is_hole_symbol(sym, hole_ix)) {
      if (!allow_holes_) {
        fail(ErrorCode::UnknownSymbol, "'" + sym + "' at " + path_string(path) +
                                           " (holes are only valid in abstraction bodies)");
      }
      if (!expected.has_value()) {
        fail(ErrorCode::SyntaxError, "cannot infer the type of a bare hole at " + path_string(path));
      }
      if (static_cast<size_t>(hole_ix) >= hole_types_.size()) {
        hole_types_.resize(static_cast<size_t>(hole_ix) + 1);
      }
      auto& slot = hole_types_[static_cast<size_t>(hole_ix)];
      if (slot.has_value() && *slot != *expected) {
        fail(ErrorCode::TypeMismatch, "hole #" + std::to_string(hole_ix) + " used as " +
                                          std::string(to_string(*slot)) + " and " +
                                          to_string(*expected));
      }
      slot = *expected;
      nodes_.push_back(Pattern::hole_entry(hole_ix));
      return *expected;
    }

    const RuleId id = g_.find(sym);
    if (id == kNoRule) fail(ErrorCode::UnknownSymbol, "'" + sym + "' at " + path_string(path));
    const ProductionRule& rule = g_.rule(id);
    if (rule.arity() != 0) {
      fail(ErrorCode::ArityError, "'" + sym + "' expects " + std::to_string(rule.arity()) +
                                      " arguments, got 0 at " + path_string(path));
    }
    nodes_.push_back(id);
    check_expected(rule.ret, expected, path);
    return rule.ret;
  }

  // Best-effort result type from the head symbol only; holes are unknown.
  std::optional<TypeTag> apparent_type(const Sexpr& s) const {
    const std::string& name = s.is_list ? s.children.front().symbol : s.symbol;
    int hole_ix = 0;
    if (is_hole_symbol(name, hole_ix)) return std::nullopt;
    const RuleId id = g_.find(name);
    if (id == kNoRule) return std::nullopt;
    return g_.rule(id).ret;
  }

  void check_expected(TypeTag got, std::optional<TypeTag> expected, std::vector<int>& path) {
    if (expected.has_value() && got != *expected) {
      fail(ErrorCode::TypeMismatch, "at " + path_string(path) + ": expected " +
                                        std::string(to_string(*expected)) + ", got " +
                                        to_string(got));
    }
  }

  const Grammar& g_;
  bool allow_holes_;
  std::vector<int32_t> nodes_;
  std::vector<std::optional<TypeTag>> hole_types_;
};

Sexpr parse_single(std::string_view text) {
  const std::vector<Token> toks = tokenize(text);
  if (toks.empty()) fail(ErrorCode::SyntaxError, "empty input");
  size_t pos = 0;
  Sexpr s = parse_sexpr(toks, pos);
  if (pos != toks.size()) fail(ErrorCode::SyntaxError, "trailing tokens after expression");
  return s;
}

void print_node(std::span<const int32_t> nodes, const Grammar& g, size_t& pos,
                std::ostringstream& os) {
  const int32_t e = nodes[pos++];
  if (Pattern::is_hole(e)) {
    os << "#" << Pattern::hole_index(e);
    return;
  }
  const ProductionRule& rule = g.rule(e);
  if (rule.is_leaf()) {
    os << rule.name;
    return;
  }
  os << "(" << rule.name;
  for (int k = 0; k < rule.arity(); ++k) {
    os << " ";
    print_node(nodes, g, pos, os);
  }
  os << ")";
}

}  // namespace

Program parse_program(std::string_view text, const Grammar& g) {
  const Sexpr s = parse_single(text);
  Builder b(g, /*allow_holes=*/false);
  std::vector<int> path;
  b.build(s, std::nullopt, path);
  std::vector<int32_t> raw = b.take_nodes();
  std::vector<RuleId> nodes(raw.begin(), raw.end());
  return Program::from_preorder(std::move(nodes), g);
}

std::string print_program(const Program& p, const Grammar& g) {
  std::ostringstream os;
  size_t pos = 0;
  std::span<const int32_t> view(p.nodes().data(), p.nodes().size());
  print_node(view, g, pos, os);
  return os.str();
}

Pattern parse_pattern(std::string_view text, const Grammar& g) {
  const Sexpr s = parse_single(text);
  Builder b(g, /*allow_holes=*/true);
  std::vector<int> path;
  b.build(s, std::nullopt, path);

  Pattern p;
  p.nodes = b.take_nodes();
  const auto& inferred = b.hole_types();
  p.hole_types.reserve(inferred.size());
  for (size_t i = 0; i < inferred.size(); ++i) {
    if (!inferred[i].has_value()) {
      fail(ErrorCode::SyntaxError, "hole indices must be contiguous; #" + std::to_string(i) +
                                       " is missing from the body");
    }
    p.hole_types.push_back(*inferred[i]);
  }
  finalize_pattern(p, g);
  return p;
}

std::string print_pattern(const Pattern& p, const Grammar& g) {
  std::ostringstream os;
  size_t pos = 0;
  std::span<const int32_t> view(p.nodes.data(), p.nodes.size());
  print_node(view, g, pos, os);
  return os.str();
}

std::vector<Program> parse_program_file(const std::string& contents, const Grammar& g) {
  std::vector<Program> out;
  std::istringstream in(contents);
  std::string line;
  while (std::getline(in, line)) {
    const size_t comment = line.find(';');
    std::string body = comment == std::string::npos ? line : line.substr(0, comment);
    const size_t first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    out.push_back(parse_program(body, g));
  }
  return out;
}

}  // namespace mazegp::dsl
