#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "occurlab/program.hpp"
#include "occurlab/term.hpp"

namespace occurlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A functor or predicate used with two different arities.
class ArityConflict : public ParseError {
 public:
  using ParseError::ParseError;
};

struct ParseOptions {
  // Accept generated variable names ("_12", "_3_I") as produced by render().
  // Accepted names are reserved in the supply so later fresh names avoid them.
  bool accept_generated = false;
};

/// Edinburgh-style subset: facts, rules with ":-", list sugar, "_", quoted
/// atoms, decimal literals (expanded to s/1 numerals), "%" comments.
/// Each "_" becomes a distinct fresh variable drawn from `supply`.
Program parse_program(std::string_view text, NameSupply& supply, ParseOptions options = {});
Program parse_program(std::string_view text, ParseOptions options = {});

// Comma-separated "t = u" items; the empty string yields the empty set.
EquationSet parse_equations(std::string_view text, NameSupply& supply, ParseOptions options = {});
EquationSet parse_equations(std::string_view text, ParseOptions options = {});

// Comma-separated atoms with an optional final '.'.
Query parse_query(std::string_view text, NameSupply& supply, ParseOptions options = {});
Query parse_query(std::string_view text, ParseOptions options = {});

Term parse_term(std::string_view text, NameSupply& supply, ParseOptions options = {});
Term parse_term(std::string_view text, ParseOptions options = {});

// s^n(0)
Term numeral(std::size_t n);

std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Equation& e);
std::string render(std::span<const Equation> eqs);
std::string render(const Substitution& s);
std::string render(const Clause& c);
std::string render(const Program& p);
std::string render(std::span<const Atom> query);
std::string render(const Variable& v);

}  // namespace occurlab
