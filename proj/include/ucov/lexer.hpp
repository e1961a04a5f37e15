#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ucov/ast.hpp"

namespace ucov {

enum class TokenKind {
  Identifier,
  Keyword,
  IntLiteral,
  LongLiteral,
  FloatLiteral,
  DoubleLiteral,
  CharLiteral,
  StringLiteral,
  Operator,  // punctuation included
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  Location loc;
  // Byte offset just past the token; used to glue `>` `>` into a shift.
  std::size_t end_offset = 0;
  std::size_t offset = 0;

  [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  [[nodiscard]] bool op(std::string_view t) const { return is(TokenKind::Operator, t); }
  [[nodiscard]] bool kw(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

bool is_keyword(std::string_view word);

/// Splits UTF-8 text into tokens, skipping whitespace and comments. `>` is
/// always emitted as a single-character token so that nested generic argument
/// lists close cleanly; the parser reassembles shift operators. The result
/// always ends with an End token. Throws ParseError on malformed input.
std::vector<Token> tokenize(std::string_view text, const std::string& path);

}  // namespace ucov
