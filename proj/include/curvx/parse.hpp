#pragma once

#include <set>
#include <string>
#include <string_view>

#include "curvx/expr.hpp"

namespace curvx {

/// Parses one expression of the metric DSL.
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?        right associative
///   atom   := integer | name | name '(' expr ')' | '(' expr ')'
///
/// Functions: sin cos tan cot sqrt exp log abs. Exponents must reduce to
/// rational constants. Decimal literals are rejected so that coefficients
/// stay exact. Names outside `allowed` raise UnknownSymbolError.
///
/// `line` and `column_offset` shift the positions reported in ParseError,
/// for expressions embedded in a larger file.
[[nodiscard]] Expr parse_expr(std::string_view text, const std::set<std::string>& allowed, int line = 1,
                              int column_offset = 0);

/// Convenience overload that accepts any identifier as a symbol.
[[nodiscard]] Expr parse_expr_any(std::string_view text);

[[nodiscard]] bool is_identifier(std::string_view s);
[[nodiscard]] bool is_reserved_name(std::string_view s);

}  // namespace curvx
