#ifndef SYMFI_PARSE_HPP
#define SYMFI_PARSE_HPP

#include "symfi/bipoly.hpp"

#include <string>
#include <utility>

namespace symfi {

// Grammar: integer/rational literals, variables x and y, operators + - * ^
// (nonnegative integer exponents), parentheses. Multiplication is always
// explicit; whitespace is ignored.
BiPoly parse_poly(const std::string &text);

// "A = <poly> ; B = <poly>" (labels optional: "<poly>; <poly>" also accepted)
std::pair<BiPoly, BiPoly> parse_field_spec(const std::string &text);

} // namespace symfi

#endif
