#pragma once

#include <string>
#include <vector>

#include "mazegp/dsl/parser.hpp"
#include "mazegp/dsl/program.hpp"

namespace mazegp::liblearn {

// A mined program pattern. Holes (#0..#arity-1) are the parameters of the
// production rule it registers as; the same hole may occur at several
// positions, in which case every call site passed equal subtrees there.
struct Abstraction {
  std::string name;  // fn_k
  dsl::Pattern body;

  int arity() const { return body.arity(); }
  int concrete_size() const { return body.concrete_size(); }
  dsl::TypeTag return_type() const { return body.return_type; }

  // Listing-style surface form: fn_k=(body with #i holes)
  std::string definition(const dsl::Grammar& g) const {
    return name + "=" + dsl::print_pattern(body, g);
  }
};

// Structural equality modulo a consistent renaming of hole indices.
bool alpha_equivalent(const dsl::Pattern& a, const dsl::Pattern& b);

// Adds the abstraction to the grammar as a new production rule backed by a
// result cache. Throws DuplicateName.
dsl::RuleId register_abstraction(dsl::Grammar& g, const Abstraction& abs);

// Parses "fn_k=(...)" lines (the library file format) and registers each one
// before parsing the next, so later lines may call earlier functions.
std::vector<Abstraction> load_library(const std::string& contents, dsl::Grammar& g);
std::string library_to_text(const std::vector<Abstraction>& lib, const dsl::Grammar& g);

}  // namespace mazegp::liblearn
