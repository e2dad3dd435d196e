#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "defectlaw/analysis.hpp"
#include "defectlaw/component.hpp"

namespace defectlaw {

// Flags shared by the subcommands; each maps to one command-line option.
struct RunConfig {
  std::optional<Language> language;  // --language (auto when unset)
  Granularity granularity = Granularity::file;
  double fraction = 0.95;
  double normalize = 1.0;
  std::optional<std::int64_t> d_max;  // --d-max; unset means auto-99
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 1;
};

// Runs the `defectlaw` command line. `args` excludes the program name.
// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace defectlaw
