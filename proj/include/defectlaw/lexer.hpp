#pragma once

// Lexical scanning of source text into the tokens whose count (t) and
// distinct spellings (a) are measured per component.
//
// Three rule sets are supported:
//   c-like     C/C++ family: // and /* */ comments, "..." and '...' literals,
//              C++ keyword set, preprocessor lines lexed as ordinary tokens.
//   java-like  Java family: same comment and literal rules, Java keywords and
//              operators (>>>, >>>=, ->, ::, @).
//   plain      whitespace-delimited words; every punctuation character is a
//              token of its own. No comments, no literals.
//
// Tokens are identified by exact spelling; meaning is never interpreted.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defectlaw/error.hpp"

namespace defectlaw {

enum class TokenKind {
  identifier,
  keyword,
  operator_or_punctuator,
  numeric_literal,
  string_literal,
  char_literal,
};

enum class Language { c_like, java_like, plain };

struct Token {
  std::string spelling;
  TokenKind kind = TokenKind::identifier;
  std::size_t line = 1;

  bool operator==(const Token&) const = default;
};

std::string_view to_string(TokenKind kind);
std::string_view to_string(Language language);
std::optional<Language> parse_language(std::string_view name);

// Throws LexError on an unterminated string, char literal or block comment.
std::vector<Token> tokenize(std::string_view source, Language language);

} // namespace defectlaw
