#include "defectlaw/component.hpp"

#include <map>
#include <unordered_set>

namespace defectlaw {

namespace {

bool is_op(const Token& t, std::string_view s) {
  return t.kind == TokenKind::operator_or_punctuator && t.spelling == s;
}

bool is_kw(const Token& t, std::string_view s) {
  return t.kind == TokenKind::keyword && t.spelling == s;
}

// Index of the token closing the bracket opened at `open`, or npos.
std::size_t match_close(const std::vector<Token>& toks, std::size_t open, std::size_t end,
                        std::string_view o, std::string_view c) {
  int depth = 0;
  for (std::size_t i = open; i < end; ++i) {
    if (is_op(toks[i], o)) ++depth;
    else if (is_op(toks[i], c) && --depth == 0) return i;
  }
  return std::string::npos;
}

bool braces_balanced(const std::vector<Token>& toks) {
  long depth = 0;
  for (const Token& t : toks) {
    if (is_op(t, "{")) ++depth;
    else if (is_op(t, "}") && --depth < 0) return false;
  }
  return depth == 0;
}

enum class BlockKind { function, container, other };

struct HeaderInfo {
  BlockKind kind = BlockKind::other;
  std::string name;
  bool has_init_list = false;
};

class FunctionSplitter {
public:
  FunctionSplitter(const std::vector<Token>& toks, Language lang)
      : toks_(toks), lang_(lang), owner_(toks.size(), -1) {}

  void run() { scan(0, toks_.size()); }

  // Component index per token, -1 for residual.
  const std::vector<int>& owner() const { return owner_; }
  const std::vector<std::string>& names() const { return names_; }

private:
  bool directive_start(std::size_t i, std::size_t begin) const {
    return lang_ == Language::c_like && is_op(toks_[i], "#") &&
           (i == begin || toks_[i - 1].line < toks_[i].line);
  }

  void scan(std::size_t begin, std::size_t end) {
    std::size_t header = begin;
    int paren = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const Token& t = toks_[i];
      if (directive_start(i, begin)) {
        const std::size_t line = t.line;
        while (i + 1 < end && toks_[i + 1].line == line) ++i;
        header = i + 1;
        continue;
      }
      if (is_op(t, "(") || is_op(t, "[")) {
        ++paren;
      } else if (is_op(t, ")") || is_op(t, "]")) {
        if (paren > 0) --paren;
      } else if (paren == 0 && is_op(t, ";")) {
        header = i + 1;
      } else if (paren == 0 && is_op(t, "}")) {
        header = i + 1;
      } else if (paren == 0 && is_op(t, ":") && i > header &&
                 (is_kw(toks_[i - 1], "public") || is_kw(toks_[i - 1], "private") ||
                  is_kw(toks_[i - 1], "protected"))) {
        header = i + 1;  // access specifier label
      } else if (paren == 0 && is_op(t, "{")) {
        const std::size_t close = match_close(toks_, i, end, "{", "}");
        if (close == std::string::npos) return;  // balance was checked up front
        const HeaderInfo info = classify(header, i);
        if (info.kind == BlockKind::function && info.has_init_list && i > header &&
            (toks_[i - 1].kind == TokenKind::identifier || is_op(toks_[i - 1], ">"))) {
          i = close;  // brace member initializer, keep reading the header
          continue;
        }
        switch (info.kind) {
          case BlockKind::function: {
            const int index = static_cast<int>(names_.size());
            names_.push_back(info.name);
            for (std::size_t k = header; k <= close; ++k) owner_[k] = index;
            header = close + 1;
            break;
          }
          case BlockKind::container:
            scan(i + 1, close);
            header = close + 1;
            break;
          case BlockKind::other:
            header = close + 1;
            break;
        }
        i = close;
      }
    }
  }

  // Skips a leading `template < ... >` clause.
  std::size_t skip_template(std::size_t begin, std::size_t end) const {
    if (begin >= end || !is_kw(toks_[begin], "template")) return begin;
    int depth = 0;
    for (std::size_t i = begin + 1; i < end; ++i) {
      if (is_op(toks_[i], "<")) ++depth;
      else if (is_op(toks_[i], ">")) --depth;
      else if (is_op(toks_[i], ">>")) depth -= 2;
      if (depth <= 0 && i > begin + 1) return i + 1;
    }
    return begin;
  }

  std::string callable_name(std::size_t lparen, std::size_t begin) const {
    // operator overloads: `operator` followed by up to three symbol tokens
    for (std::size_t back = 1; back <= 4 && back <= lparen - begin; ++back) {
      const std::size_t k = lparen - back;
      if (is_kw(toks_[k], "operator")) {
        std::string name = "operator";
        for (std::size_t m = k + 1; m < lparen; ++m) name += toks_[m].spelling;
        return qualify(k, begin, name);
      }
      if (back == 1 && toks_[k].kind != TokenKind::operator_or_punctuator) break;
    }
    const Token& prev = toks_[lparen - 1];
    if (prev.kind != TokenKind::identifier) return {};
    if (lparen - 1 > begin) {
      const Token& before = toks_[lparen - 2];
      if (is_op(before, "@") || is_op(before, ".") || is_op(before, "->")) return {};
    }
    return qualify(lparen - 1, begin, prev.spelling);
  }

  // Prepends `A::B::` and `~` qualifiers preceding token `at`.
  std::string qualify(std::size_t at, std::size_t begin, std::string name) const {
    std::size_t k = at;
    if (k > begin && is_op(toks_[k - 1], "~")) {
      name = "~" + name;
      --k;
    }
    while (k >= begin + 2 && is_op(toks_[k - 1], "::") &&
           toks_[k - 2].kind == TokenKind::identifier) {
      name = toks_[k - 2].spelling + "::" + name;
      k -= 2;
    }
    return name;
  }

  HeaderInfo classify(std::size_t begin, std::size_t end) const {
    HeaderInfo info;
    const std::size_t start = skip_template(begin, end);
    if (start < end && lang_ == Language::c_like && is_kw(toks_[start], "extern") &&
        start + 1 < end && toks_[start + 1].kind == TokenKind::string_literal) {
      info.kind = BlockKind::container;
      return info;
    }

    static const std::unordered_set<std::string_view> kAlwaysContainer = {
        "class", "interface", "namespace"};
    bool container_kw = false;
    bool assignment = false;
    std::string name;
    int paren = 0;
    for (std::size_t i = start; i < end; ++i) {
      const Token& t = toks_[i];
      if (is_op(t, "(")) {
        if (paren == 0 && i > start && !assignment && !info.has_init_list) {
          std::string candidate = callable_name(i, start);
          if (!candidate.empty()) name = std::move(candidate);
        }
        ++paren;
        continue;
      }
      if (is_op(t, ")")) {
        if (paren > 0) --paren;
        continue;
      }
      if (paren > 0) continue;
      if (t.kind == TokenKind::keyword || t.kind == TokenKind::identifier) {
        if (kAlwaysContainer.contains(t.spelling)) container_kw = true;
        if (lang_ == Language::java_like && (t.spelling == "enum" || t.spelling == "record"))
          container_kw = true;
      } else if (is_op(t, "=") && !(i > start && is_kw(toks_[i - 1], "operator"))) {
        if (name.empty()) assignment = true;
      } else if (is_op(t, ":") && !name.empty()) {
        info.has_init_list = true;
      } else if (is_op(t, "@") && i + 1 < end && is_kw(toks_[i + 1], "interface")) {
        container_kw = true;
      }
    }
    if (container_kw) {
      info.kind = BlockKind::container;
    } else if (!name.empty() && !assignment) {
      info.kind = BlockKind::function;
      info.name = std::move(name);
    }
    return info;
  }

  const std::vector<Token>& toks_;
  Language lang_;
  std::vector<int> owner_;
  std::vector<std::string> names_;
};

} // namespace

std::string_view to_string(Granularity granularity) {
  return granularity == Granularity::file ? "file" : "function";
}

std::optional<Granularity> parse_granularity(std::string_view name) {
  if (name == "file") return Granularity::file;
  if (name == "function") return Granularity::function;
  return std::nullopt;
}

SplitResult split_components(std::string_view file_id, std::vector<Token> tokens,
                             Language language, Granularity granularity) {
  SplitResult result;
  if (tokens.empty()) return result;

  auto whole_file = [&] {
    result.components.push_back(Component{std::string(file_id), std::move(tokens)});
  };

  if (granularity == Granularity::file) {
    whole_file();
    return result;
  }
  if (language == Language::plain) {
    result.warnings.push_back(std::string(file_id) +
                              ": function granularity unsupported for plain text, using file");
    whole_file();
    return result;
  }
  if (!braces_balanced(tokens)) {
    result.warnings.push_back(std::string(file_id) +
                              ": unbalanced braces, falling back to file granularity");
    whole_file();
    return result;
  }

  FunctionSplitter splitter(tokens, language);
  splitter.run();
  const auto& owner = splitter.owner();
  const auto& names = splitter.names();

  std::vector<Component> functions(names.size());
  std::map<std::string, int> seen;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const int n = ++seen[names[k]];
    functions[k].id = std::string(file_id) + ":" + names[k];
    if (n > 1) functions[k].id += "#" + std::to_string(n);
  }
  Component residual{std::string(file_id), {}};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (owner[i] < 0) residual.tokens.push_back(std::move(tokens[i]));
    else functions[static_cast<std::size_t>(owner[i])].tokens.push_back(std::move(tokens[i]));
  }

  // Functions are discovered in source order; the residual goes last.
  for (Component& f : functions) result.components.push_back(std::move(f));
  if (!residual.tokens.empty()) result.components.push_back(std::move(residual));
  return result;
}

SplitResult split_components(std::string_view file_id, std::string_view source,
                             Language language, Granularity granularity) {
  return split_components(file_id, tokenize(source, language), language, granularity);
}

} // namespace defectlaw
