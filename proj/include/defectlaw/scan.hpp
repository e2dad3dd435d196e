#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defectlaw/component.hpp"

namespace defectlaw {

// File extension (with leading dot, lower case) to lexical rule set.
class ExtensionMap {
public:
  static ExtensionMap defaults();

  void set(std::string extension, Language language);
  std::optional<Language> lookup(const std::filesystem::path& file) const;
  const std::map<std::string, Language>& entries() const { return map_; }

private:
  std::map<std::string, Language> map_;
};

struct ScanOptions {
  ExtensionMap extensions = ExtensionMap::defaults();
  // Overrides the per-extension language for every selected file.
  std::optional<Language> language;
  Granularity granularity = Granularity::file;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct ScanResult {
  std::vector<Component> components;  // sorted by id
  std::vector<std::string> warnings;  // sorted by file
  std::size_t files_scanned = 0;
  std::size_t files_skipped = 0;
};

// Walks `root` recursively. Component ids are paths relative to `root` using
// '/' separators. Files that fail to lex are skipped with a warning. Throws
// Error when `root` is not a readable directory.
ScanResult scan_tree(const std::filesystem::path& root, const ScanOptions& options = {});

} // namespace defectlaw
