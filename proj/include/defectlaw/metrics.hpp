#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "defectlaw/component.hpp"

namespace defectlaw {

// Size t (tokens), unique alphabet a (distinct spellings) and information
// content t·ln(a) of one component.
struct ComponentMetrics {
  std::string id;
  std::int64_t t = 0;
  std::int64_t a = 0;
  double info = 0.0;
};

struct SystemSummary {
  std::size_t M = 0;
  std::int64_t T = 0;
  double I_total = 0.0;
};

// t·ln(a). Requires t >= 1 and 1 <= a <= t, else DomainError.
double information_content(std::int64_t t, std::int64_t a);

// DomainError for an empty component.
ComponentMetrics measure(const Component& component);

// Measures every non-empty component; empty ones are reported in `warnings`.
std::vector<ComponentMetrics> measure_all(std::span<const Component> components,
                                          std::vector<std::string>& warnings);

// Error on an empty list.
SystemSummary summarize(std::span<const ComponentMetrics> metrics);

// `id,t,a,info` with info at 6 significant digits.
std::string format_metrics_csv(std::span<const ComponentMetrics> metrics);

// Parses a metrics CSV. Rows with t = 0 are dropped. info is recomputed from
// t and a; a stored value disagreeing beyond its printed precision is a
// DataError, as are duplicate ids and a > t.
std::vector<ComponentMetrics> load_metrics(const std::filesystem::path& path);

} // namespace defectlaw
