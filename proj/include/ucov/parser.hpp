#pragma once

#include <string>
#include <string_view>

#include "ucov/ast.hpp"

namespace ucov {

/// Parses one J-lite compilation unit. Declarations keep source order and the
/// location of their name tokens. Implied modifiers are made explicit: a
/// missing visibility becomes packagePrivate (public inside interfaces),
/// bodiless interface methods become abstract, interface fields become
/// `public static final`, and interface member types become `public static`.
///
/// Throws ParseError for any input outside the accepted grammar.
SourceUnit parse_unit(std::string_view text, const std::string& path);

}  // namespace ucov
