#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "simpepist/formula.hpp"

namespace simpepist {

// Syntax error with a 1-based column into the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& what)
      : std::runtime_error("syntax error at column " + std::to_string(column) +
                           ": " + what),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Concrete syntax:
//   formula := iff
//   iff     := imp ("<->" imp)*          (left-associative)
//   imp     := or ("->" imp)?            (right-associative)
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "[" agent "]" unary | "<" agent ">" unary | atom
//   atom    := var | "T_" agent | "(" formula ")"
//   var     := ident "_" agent
// [a] is the universal and <a> the existential knowledge modality; T_a is
// the aliveness abbreviation.  Identifiers are letters followed by letters,
// digits or primes.
Formula parse_formula(std::string_view text);

}  // namespace simpepist
