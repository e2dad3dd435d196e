#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defectlaw/lexer.hpp"

namespace defectlaw {

enum class Granularity { file, function };

std::string_view to_string(Granularity granularity);
std::optional<Granularity> parse_granularity(std::string_view name);

// A unit of measurement: a whole file, or one top-level function body.
// Function components are identified as "<file>:<name>", with "#2", "#3", ...
// appended to repeated names. Tokens outside any function form a residual
// component carrying the bare file id.
struct Component {
  std::string id;
  std::vector<Token> tokens;
};

struct SplitResult {
  std::vector<Component> components;
  std::vector<std::string> warnings;
};

// Function granularity recognises `name ( ... ) {` headers at namespace/class
// scope by balanced-brace matching. Class, interface, namespace and record
// bodies are descended into; struct/union/enum bodies and initializer braces
// stay in the residual component. Unbalanced braces, or the plain language,
// fall back to file granularity with a warning.
SplitResult split_components(std::string_view file_id, std::vector<Token> tokens,
                             Language language, Granularity granularity);

// Tokenizes then splits. LexError propagates.
SplitResult split_components(std::string_view file_id, std::string_view source,
                             Language language, Granularity granularity);

} // namespace defectlaw
