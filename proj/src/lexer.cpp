#include "defectlaw/lexer.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace defectlaw {

namespace {

// Sorted longest-first within each table so the first prefix match wins.
constexpr std::array<std::string_view, 27> kCOperators = {
    "->*", "<=>", "<<=", ">>=", "...", "::", "->", "++", "--", "<<",
    ">>",  "<=",  ">=",  "==",  "!=",  "&&", "||", "+=", "-=", "*=",
    "/=",  "%=",  "&=",  "|=",  "^=",  "##", ".*",
};

constexpr std::array<std::string_view, 25> kJavaOperators = {
    ">>>=", ">>>", "<<=", ">>=", "...", "->", "::", "++", "--",
    "<<",   ">>",  "<=",  ">=",  "==",  "!=", "&&", "||", "+=",
    "-=",   "*=",  "/=",  "%=",  "&=",  "|=", "^=",
};

const std::unordered_set<std::string_view>& c_keywords() {
  static const std::unordered_set<std::string_view> k = {
      "alignas", "alignof", "asm", "auto", "bool", "break", "case", "catch",
      "char", "char8_t", "char16_t", "char32_t", "class", "concept", "const",
      "consteval", "constexpr", "constinit", "const_cast", "continue",
      "co_await", "co_return", "co_yield", "decltype", "default", "delete",
      "do", "double", "dynamic_cast", "else", "enum", "explicit", "export",
      "extern", "false", "float", "for", "friend", "goto", "if", "inline",
      "int", "long", "mutable", "namespace", "new", "noexcept", "nullptr",
      "operator", "private", "protected", "public", "register",
      "reinterpret_cast", "requires", "restrict", "return", "short", "signed",
      "sizeof", "static", "static_assert", "static_cast", "struct", "switch",
      "template", "this", "thread_local", "throw", "true", "try", "typedef",
      "typeid", "typename", "union", "unsigned", "using", "virtual", "void",
      "volatile", "wchar_t", "while", "_Alignas", "_Alignof", "_Atomic",
      "_Bool", "_Complex", "_Generic", "_Imaginary", "_Noreturn",
      "_Static_assert", "_Thread_local",
  };
  return k;
}

const std::unordered_set<std::string_view>& java_keywords() {
  static const std::unordered_set<std::string_view> k = {
      "abstract", "assert", "boolean", "break", "byte", "case", "catch",
      "char", "class", "const", "continue", "default", "do", "double", "else",
      "enum", "extends", "final", "finally", "float", "for", "goto", "if",
      "implements", "import", "instanceof", "int", "interface", "long",
      "native", "new", "package", "private", "protected", "public", "return",
      "short", "static", "strictfp", "super", "switch", "synchronized", "this",
      "throw", "throws", "transient", "try", "void", "volatile", "while",
      "true", "false", "null", "var", "record", "yield",
  };
  return k;
}

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(unsigned char c) { return is_ident_start(c) || is_digit(c); }
bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

class Scanner {
public:
  Scanner(std::string_view src, Language lang) : src_(src), lang_(lang) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const unsigned char c = peek();
      if (is_space(c)) {
        advance();
        continue;
      }
      if (lang_ == Language::plain) {
        plain_token();
        continue;
      }
      if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        block_comment();
        continue;
      }
      if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        number();
        continue;
      }
      if (is_ident_start(c)) {
        identifier_or_prefixed_literal();
        continue;
      }
      if (c == '"') {
        if (lang_ == Language::java_like && src_.substr(pos_, 3) == "\"\"\"") {
          text_block(pos_);
        } else {
          quoted(pos_, '"', TokenKind::string_literal);
        }
        continue;
      }
      if (c == '\'') {
        quoted(pos_, '\'', TokenKind::char_literal);
        continue;
      }
      punctuator();
    }
    return std::move(out_);
  }

private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void emit(std::size_t begin, TokenKind kind, std::size_t line) {
    out_.push_back(Token{std::string(src_.substr(begin, pos_ - begin)), kind, line});
  }

  void plain_token() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    const unsigned char c = peek();
    if (is_ident_char(c) && c != '$') {
      while (pos_ < src_.size() && is_ident_char(peek()) && peek() != '$') advance();
      emit(begin, is_digit(c) ? TokenKind::numeric_literal : TokenKind::identifier, line);
    } else {
      advance();
      emit(begin, TokenKind::operator_or_punctuator, line);
    }
  }

  void block_comment() {
    const std::size_t start_line = line_;
    advance(2);
    while (pos_ < src_.size()) {
      if (peek() == '*' && peek(1) == '/') {
        advance(2);
        return;
      }
      advance();
    }
    throw LexError("unterminated block comment", start_line);
  }

  // pp-number: digits, letters, '.', digit separators and signed exponents.
  void number() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    advance();
    while (pos_ < src_.size()) {
      const unsigned char c = peek();
      const unsigned char prev = static_cast<unsigned char>(src_[pos_ - 1]);
      if ((c == '+' || c == '-') &&
          (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P')) {
        advance();
      } else if (c == '\'' && lang_ == Language::c_like && is_ident_char(peek(1))) {
        advance();
      } else if (is_ident_char(c) || c == '.') {
        advance();
      } else {
        break;
      }
    }
    emit(begin, TokenKind::numeric_literal, line);
  }

  void identifier_or_prefixed_literal() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    while (pos_ < src_.size() && is_ident_char(peek())) advance();
    const std::string_view word = src_.substr(begin, pos_ - begin);

    if (lang_ == Language::c_like) {
      const unsigned char next = peek();
      if (next == '"' && (word == "R" || word == "LR" || word == "uR" || word == "UR" ||
                          word == "u8R")) {
        raw_string(begin, line);
        return;
      }
      if ((next == '"' || next == '\'') &&
          (word == "L" || word == "u" || word == "U" || word == "u8")) {
        quoted(begin, static_cast<char>(next),
               next == '"' ? TokenKind::string_literal : TokenKind::char_literal);
        return;
      }
    }
    const auto& keywords = lang_ == Language::java_like ? java_keywords() : c_keywords();
    emit(begin, keywords.contains(word) ? TokenKind::keyword : TokenKind::identifier, line);
  }

  // `begin` may precede pos_ when an encoding prefix was already consumed.
  void quoted(std::size_t begin, char quote, TokenKind kind) {
    const std::size_t line = line_;
    advance();
    while (pos_ < src_.size()) {
      const char c = static_cast<char>(peek());
      if (c == '\\') {
        advance(2);
        continue;
      }
      if (c == '\n') break;
      advance();
      if (c == quote) {
        emit(begin, kind, line);
        return;
      }
    }
    throw LexError(kind == TokenKind::string_literal ? "unterminated string literal"
                                                     : "unterminated character literal",
                   line);
  }

  void raw_string(std::size_t begin, std::size_t line) {
    advance();  // opening quote
    const std::size_t delim_begin = pos_;
    while (pos_ < src_.size() && peek() != '(' && peek() != '\n') advance();
    if (peek() != '(') throw LexError("malformed raw string literal", line);
    const std::string closing =
        ")" + std::string(src_.substr(delim_begin, pos_ - delim_begin)) + "\"";
    const std::size_t end = src_.find(closing, pos_);
    if (end == std::string_view::npos) throw LexError("unterminated raw string literal", line);
    advance(end + closing.size() - pos_);
    emit(begin, TokenKind::string_literal, line);
  }

  void text_block(std::size_t begin) {
    const std::size_t line = line_;
    advance(3);
    while (pos_ < src_.size()) {
      if (peek() == '\\') {
        advance(2);
        continue;
      }
      if (src_.substr(pos_, 3) == "\"\"\"") {
        advance(3);
        emit(begin, TokenKind::string_literal, line);
        return;
      }
      advance();
    }
    throw LexError("unterminated text block", line);
  }

  void punctuator() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    const std::string_view rest = src_.substr(pos_);
    auto match = [&](auto const& table) -> std::size_t {
      for (std::string_view op : table) {
        if (rest.starts_with(op)) return op.size();
      }
      return 1;
    };
    const std::size_t len = lang_ == Language::java_like ? match(kJavaOperators) : match(kCOperators);
    advance(len);
    emit(begin, TokenKind::operator_or_punctuator, line);
  }

  std::string_view src_;
  Language lang_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<Token> out_;
};

} // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::operator_or_punctuator: return "operator";
    case TokenKind::numeric_literal: return "numeric";
    case TokenKind::string_literal: return "string";
    case TokenKind::char_literal: return "char";
  }
  return "unknown";
}

std::string_view to_string(Language language) {
  switch (language) {
    case Language::c_like: return "c-like";
    case Language::java_like: return "java-like";
    case Language::plain: return "plain";
  }
  return "unknown";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "c-like") return Language::c_like;
  if (name == "java-like") return Language::java_like;
  if (name == "plain") return Language::plain;
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view source, Language language) {
  return Scanner(source, language).run();
}

} // namespace defectlaw
