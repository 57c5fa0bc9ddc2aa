#pragma once

#include <string>
#include <vector>

#include "lincost/ast.hpp"

namespace lincost {

struct ParseError : LangError {
  ParseError(const std::string& msg, int line, int col)
      : LangError(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
  int line, col;
};

// Parses a single expression.
ExprPtr parse(const std::string& source);

// Parses a program: either a sequence of `fun NAME ARG = BODY` declarations
// (each in scope for the following ones, desugared to a let chain ending in
// the last declared name) or a single expression. Scope-checks the result.
ExprPtr parse_program(const std::string& source);

// Parses a value literal: true/false, [v, ...], (v, w). Used for CLI inputs.
ValuePtr parse_value(const std::string& source);

}  // namespace lincost
