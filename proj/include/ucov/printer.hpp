#pragma once

#include <string>

#include "ucov/ast.hpp"

namespace ucov {

/// Canonical J-lite rendering. Compound expressions are fully parenthesized
/// and implied modifiers are spelled out, so parse_unit(render(u)) yields a
/// unit structurally equal to `u`.
std::string render(const SourceUnit& unit);
std::string render(const TypeRef& type);
std::string render(const Expr& expr);

/// Structural equality that ignores locations and the unit path.
bool structurally_equal(const SourceUnit& a, const SourceUnit& b);
bool structurally_equal(const TypeRef& a, const TypeRef& b);

}  // namespace ucov
