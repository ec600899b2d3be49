#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "llfp/ast/ast.hpp"

namespace llfp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses a clause file:
///
///   file   := lattice-decl decl* item*
///   decl   := "rel" IDENT "/" INT | "fun" IDENT "/" INT | "universe" atom ("," atom)*
///   item   := "fact" IDENT "(" atoms ")" "=" lconst | "clause" clause ("," clause)*
///
/// Every comma-separated clause of a `clause` item is its own sequence element.
/// Identifiers are resolved against enclosing quantifiers first, then the
/// universe; anything else is kept as a free term for check_well_formed.
/// Throws ParseError on syntax errors, arity mismatches, unknown function
/// symbols and unknown atoms.
Program parse_program(std::string_view text);

/// Renders a program in the same concrete syntax; parse_program(print_program(p)) == p.
std::string print_program(const Program& program);
std::string print_clause(const Program& program, const Clause& clause);
std::string print_pre(const Program& program, const Pre& pre);

}  // namespace llfp
