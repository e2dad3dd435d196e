#include "defectlaw/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "defectlaw/error.hpp"

namespace defectlaw {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct FileJob {
  fs::path path;
  std::string id;
  Language language;
};

struct FileOutcome {
  std::vector<Component> components;
  std::vector<std::string> warnings;
  bool skipped = false;
};

FileOutcome process(const FileJob& job, Granularity granularity) {
  FileOutcome out;
  std::ifstream in(job.path, std::ios::binary);
  if (!in) {
    out.skipped = true;
    out.warnings.push_back(job.id + ": cannot read file, skipped");
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    SplitResult split = split_components(job.id, buf.str(), job.language, granularity);
    out.components = std::move(split.components);
    out.warnings = std::move(split.warnings);
  } catch (const LexError& e) {
    out.skipped = true;
    out.warnings.push_back(job.id + ": " + e.what() + ", skipped");
  }
  return out;
}

} // namespace

ExtensionMap ExtensionMap::defaults() {
  ExtensionMap m;
  for (const char* ext : {".c", ".h", ".cc", ".cpp", ".cxx", ".c++", ".hpp", ".hh", ".hxx",
                          ".inl", ".ipp"})
    m.set(ext, Language::c_like);
  m.set(".java", Language::java_like);
  return m;
}

void ExtensionMap::set(std::string extension, Language language) {
  if (!extension.empty() && extension.front() != '.') extension.insert(0, 1, '.');
  map_[lower(std::move(extension))] = language;
}

std::optional<Language> ExtensionMap::lookup(const fs::path& file) const {
  const auto it = map_.find(lower(file.extension().string()));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

ScanResult scan_tree(const fs::path& root, const ScanOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error("not a readable directory: " + root.string());

  std::vector<FileJob> jobs;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const auto language = options.extensions.lookup(it->path());
    if (!language) continue;
    jobs.push_back(FileJob{it->path(), fs::relative(it->path(), root).generic_string(),
                           options.language.value_or(*language)});
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const FileJob& a, const FileJob& b) { return a.id < b.id; });

  std::vector<FileOutcome> outcomes(jobs.size());
  unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
          outcomes[i] = process(jobs[i], options.granularity);
      });
    }
  }

  ScanResult result;
  for (FileOutcome& o : outcomes) {
    if (o.skipped) ++result.files_skipped;
    else ++result.files_scanned;
    std::move(o.components.begin(), o.components.end(), std::back_inserter(result.components));
    std::move(o.warnings.begin(), o.warnings.end(), std::back_inserter(result.warnings));
  }
  std::sort(result.components.begin(), result.components.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  return result;
}

} // namespace defectlaw
