#pragma once

#include <string>
#include <string_view>

#include "stlopt/stl/formula.hpp"

namespace stlopt::stl {

/// Parses the textual formula grammar:
///
///   formula  := or
///   or       := and ( "|" and )*
///   and      := unary ( "&" unary )*
///   unary    := "!" unary | "G" interval "(" formula ")" | "F" interval "(" formula ")"
///             | "(" formula "U" interval formula ")" | atom | "(" formula ")"
///   interval := "[" number "," number "]"
///   atom     := ident cmp number
///
/// Throws ParseError carrying the line/column of the offending token.
Formula parse_formula(std::string_view text);

/// Canonical text for `f`; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

}  // namespace stlopt::stl
