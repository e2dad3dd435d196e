#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "defectlaw/metrics.hpp"

namespace defectlaw {

struct DefectRecord {
  std::string component_id;
  std::int64_t d = 0;

  bool operator==(const DefectRecord&) const = default;
};

// Metrics with the defect count attached; density is defects per token.
struct JoinedComponent {
  ComponentMetrics metrics;
  std::int64_t d = 0;
  double density = 0.0;
};

// One regression point: all components with exactly `d` defects.
struct DefectBin {
  std::int64_t d = 0;
  std::size_t n = 0;
  double mean_info = 0.0;
};

enum class MissingPolicy { zero, skip };

std::optional<MissingPolicy> parse_missing_policy(std::string_view name);

struct JoinResult {
  std::vector<JoinedComponent> joined;
  std::vector<std::string> orphans;  // record ids with no matching component
};

// Sums duplicate ids; result sorted by id. Negative counts are a DomainError.
std::vector<DefectRecord> aggregate_defects(std::span<const DefectRecord> records);

// Reads `component_id,defects`. Errors carry the offending row.
std::vector<DefectRecord> load_defects(const std::filesystem::path& path);

std::string format_defects_csv(std::span<const DefectRecord> records);

// Joined components keep the order of `metrics`.
JoinResult join(std::span<const ComponentMetrics> metrics,
                std::span<const DefectRecord> records, MissingPolicy policy);

// Smallest d* such that components with d <= d* make up at least `fraction`
// of all components.
std::int64_t coverage_cutoff(std::span<const JoinedComponent> joined, double fraction);

// One bin per occupied level 0..d_max, sorted by d; mean_info is divided by
// `normalize`. Components above d_max are excluded. InsufficientDataError when
// nothing is left.
std::vector<DefectBin> bin_by_defects(std::span<const JoinedComponent> joined,
                                      std::int64_t d_max, double normalize = 1.0);

std::string format_bins_csv(std::span<const DefectBin> bins);

} // namespace defectlaw
