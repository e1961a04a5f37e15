#include "ucov/lexer.hpp"

#include <array>
#include <cctype>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

constexpr std::array<std::string_view, 52> kKeywords = {
    "package",  "import",    "class",    "interface", "extends",      "implements", "permits",
    "public",   "protected", "private",  "abstract",  "final",        "sealed",     "static",
    "default",  "void",      "new",      "this",      "super",        "return",     "if",
    "else",     "while",     "for",      "try",       "catch",        "finally",    "throw",
    "throws",   "true",      "false",    "null",      "break",        "continue",   "boolean",
    "byte",     "short",     "int",      "long",      "char",         "float",      "double",
    "synchronized", "transient", "volatile", "native", "strictfp",   "instanceof", "enum",
    "switch",   "do",        "case",
};

// Longest match first.
constexpr std::array<std::string_view, 20> kMultiCharOps = {
    "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<",
};

constexpr std::string_view kSingleCharOps = "+-*/%=<>!~&|^?:;,.(){}[]@";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& path) : text_(text), path_(path) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.loc = here();
    end.offset = end.end_offset = pos_;
    out.push_back(std::move(end));
    return out;
  }

 private:
  [[nodiscard]] Location here() const { return Location{path_, line_, col_}; }

  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    const auto c = static_cast<unsigned char>(text_[pos_++]);
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const Location start = here();
        advance();
        advance();
        while (true) {
          if (pos_ >= text_.size()) throw ParseError(start, "unterminated comment");
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else if (pos_ == 0 && text_.substr(0, 3) == "\xEF\xBB\xBF") {
        pos_ = 3;  // byte-order mark
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, Location loc) {
    Token t;
    t.kind = kind;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.loc = std::move(loc);
    t.offset = start;
    t.end_offset = pos_;
    return t;
  }

  Token next() {
    const Location loc = here();
    const std::size_t start = pos_;
    const auto c = static_cast<unsigned char>(peek());

    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_part(static_cast<unsigned char>(peek()))) advance();
      Token t = make(TokenKind::Identifier, start, loc);
      if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(start, loc);
    }
    if (c == '"') return quoted('"', TokenKind::StringLiteral, start, loc);
    if (c == '\'') return quoted('\'', TokenKind::CharLiteral, start, loc);

    for (std::string_view op : kMultiCharOps) {
      if (text_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, start, loc);
      }
    }
    if (kSingleCharOps.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::Operator, start, loc);
    }
    throw ParseError(loc, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  Token number(std::size_t start, const Location& loc) {
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError(loc, "malformed exponent");
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
    }
    TokenKind kind = is_float ? TokenKind::DoubleLiteral : TokenKind::IntLiteral;
    switch (peek()) {
      case 'l':
      case 'L':
        if (is_float) throw ParseError(loc, "malformed number");
        kind = TokenKind::LongLiteral;
        advance();
        break;
      case 'f':
      case 'F':
        kind = TokenKind::FloatLiteral;
        advance();
        break;
      case 'd':
      case 'D':
        kind = TokenKind::DoubleLiteral;
        advance();
        break;
      default: break;
    }
    if (ident_part(static_cast<unsigned char>(peek()))) throw ParseError(loc, "malformed number");
    return make(kind, start, loc);
  }

  Token quoted(char quote, TokenKind kind, std::size_t start, const Location& loc) {
    advance();
    std::size_t chars = 0;
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n')
        throw ParseError(loc, quote == '"' ? "unterminated string literal"
                                           : "unterminated character literal");
      const char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) throw ParseError(loc, "unterminated escape");
        if (peek() == 'u') {
          while (peek() == 'u') advance();
          for (int i = 0; i < 4; ++i) {
            if (!std::isxdigit(static_cast<unsigned char>(peek())))
              throw ParseError(loc, "malformed unicode escape");
            advance();
          }
          ++chars;
          continue;
        }
      }
      advance();
      ++chars;
    }
    if (quote == '\'' && chars != 1) throw ParseError(loc, "malformed character literal");
    return make(kind, start, loc);
  }

  std::string_view text_;
  const std::string& path_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (std::string_view k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text, const std::string& path) {
  return Lexer(text, path).run();
}

}  // namespace ucov
