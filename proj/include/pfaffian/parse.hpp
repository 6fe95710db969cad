#pragma once

#include <set>
#include <string>

#include "pfaffian/forms.hpp"

namespace pfaffian {

// Syntax or identifier error with a 1-based column position.
struct ParseError : std::runtime_error {
  int column;
  ParseError(const std::string& msg, int col)
      : std::runtime_error(msg + " (column " + std::to_string(col) + ")"),
        column(col) {}
};

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' signed-rational)?
//   base   := number | ident | func '(' expr ')' | '(' expr ')'
//   func   in {sin, cos, exp, ln, sqrt}
// Identifiers must be chart coordinates, declared parameters, or "pi".
// A signed rational is INT, INT/INT, or a parenthesized form; "x^1/2"
// reads as x^(1/2) while "x^2/y" falls back to (x^2)/y.
Expr parse_expression(const std::string& text, const ChartPtr& chart,
                      const std::set<std::string>& params = {});

// Grammar:
//   form  := ['-'] sterm (('+'|'-') sterm)*
//   sterm := [expr '*'] 'd'coord ('^' 'd'coord)*
// '^' between differentials is the wedge. "0" denotes the zero form.
DiffForm parse_form(const std::string& text, const ChartPtr& chart,
                    const std::set<std::string>& params = {});

}  // namespace pfaffian
