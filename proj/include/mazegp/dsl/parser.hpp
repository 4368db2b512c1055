#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mazegp/dsl/program.hpp"

namespace mazegp::dsl {

// Parses one S-expression into a well-typed Program. `;` starts a comment
// that runs to end of line. eq-obj? written with its arguments flipped
// (object first, as in some source material) is accepted and normalized to
// the canonical (mapObject, object) order.
// Throws SyntaxError, UnknownSymbol, ArityError, TypeMismatch.
Program parse_program(std::string_view text, const Grammar& g);

// Canonical single-line form; parse_program(print_program(p)) == p.
std::string print_program(const Program& p, const Grammar& g);

// Pattern variants. Holes are written #0, #1, ... Hole types are inferred
// from the surrounding application; a bare hole as the whole pattern is not
// accepted (its type would be unconstrained).
Pattern parse_pattern(std::string_view text, const Grammar& g);
std::string print_pattern(const Pattern& p, const Grammar& g);

// Program files: one program per line, `;` comments, blank lines ignored.
std::vector<Program> parse_program_file(const std::string& contents, const Grammar& g);

}  // namespace mazegp::dsl
