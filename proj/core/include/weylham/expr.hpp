#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "weylham/ratfunc.hpp"

namespace weylham {

// Infix grammar: symbols [A-Za-z_][A-Za-z0-9_]*, integer literals, + - * / ^
// (also **), parentheses, unary minus. "3/20" is just 3 divided by 20.
RationalFunction parse_expr(std::string_view text, const AlphabetPtr& alphabet);

// Evaluates the expression tree with bound symbols replaced by their values.
// Canonical arithmetic at every node keeps intermediate results reduced, which
// is much cheaper than expanding a large numerator and cancelling at the end.
RationalFunction evaluate_expr(std::string_view text, const AlphabetPtr& alphabet, const Bindings& bindings);

// throws std::invalid_argument if the expression is not polynomial
Polynomial parse_poly(std::string_view text, const AlphabetPtr& alphabet);

// symbol names in order of first appearance
std::vector<std::string> expr_symbols(std::string_view text);

}  // namespace weylham
