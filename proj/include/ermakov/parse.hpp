#pragma once

#include <string_view>

#include "ermakov/expr.hpp"

namespace ermakov {

struct ParseOptions {
  // Unknown identifiers become parameters instead of raising ParseError.
  bool auto_parameters = false;
};

// Infix expression syntax: + - * / ^, functions sin and cos, constant pi,
// bare identifiers for symbols. Exponents must be rational literals, e.g.
// x^2, rho^(-3), u^(1/2). Errors carry the offending position.
Expr parse_expression(std::string_view text, SymbolTable& table, const ParseOptions& opts = {});

}  // namespace ermakov
