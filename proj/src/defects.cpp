#include "defectlaw/defects.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "defectlaw/csv.hpp"
#include "defectlaw/error.hpp"

namespace defectlaw {

std::optional<MissingPolicy> parse_missing_policy(std::string_view name) {
  if (name == "zero") return MissingPolicy::zero;
  if (name == "skip") return MissingPolicy::skip;
  return std::nullopt;
}

std::vector<DefectRecord> aggregate_defects(std::span<const DefectRecord> records) {
  std::map<std::string, std::int64_t> totals;
  for (const auto& r : records) {
    if (r.d < 0) throw DomainError("negative defect count for '" + r.component_id + "'");
    totals[r.component_id] += r.d;
  }
  std::vector<DefectRecord> out;
  out.reserve(totals.size());
  for (auto& [id, d] : totals) out.push_back(DefectRecord{id, d});
  return out;
}

std::vector<DefectRecord> load_defects(const std::filesystem::path& path) {
  const auto rows = csv::read_table(path, {"component_id", "defects"});
  std::vector<DefectRecord> records;
  records.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.fields[0].empty()) throw DataError("column 'component_id': empty id", row.line);
    const std::int64_t d = csv::parse_int(row.fields[1], row.line, "defects");
    if (d < 0) throw DataError("column 'defects': negative count " + row.fields[1], row.line);
    records.push_back(DefectRecord{row.fields[0], d});
  }
  return aggregate_defects(records);
}

std::string format_defects_csv(std::span<const DefectRecord> records) {
  std::string out = "component_id,defects\n";
  for (const auto& r : records) out += fmt::format("{},{}\n", csv::quote(r.component_id), r.d);
  return out;
}

JoinResult join(std::span<const ComponentMetrics> metrics,
                std::span<const DefectRecord> records, MissingPolicy policy) {
  std::unordered_map<std::string, std::int64_t> by_id;
  for (const auto& r : aggregate_defects(records)) by_id.emplace(r.component_id, r.d);

  JoinResult result;
  std::unordered_map<std::string, bool> matched;
  for (const auto& m : metrics) {
    const auto it = by_id.find(m.id);
    if (it == by_id.end() && policy == MissingPolicy::skip) continue;
    const std::int64_t d = it == by_id.end() ? 0 : it->second;
    if (it != by_id.end()) matched[m.id] = true;
    result.joined.push_back(
        JoinedComponent{m, d, static_cast<double>(d) / static_cast<double>(m.t)});
  }
  for (const auto& r : aggregate_defects(records))
    if (!matched.contains(r.component_id)) result.orphans.push_back(r.component_id);
  return result;
}

std::int64_t coverage_cutoff(std::span<const JoinedComponent> joined, double fraction) {
  if (joined.empty()) throw InsufficientDataError("coverage_cutoff: no components");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw DomainError("coverage_cutoff: fraction must be in (0, 1]");
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& j : joined) ++counts[j.d];
  const double n = static_cast<double>(joined.size());
  // Tolerance absorbs representation error in e.g. 0.95 * 100.
  const double needed = fraction * n - 1e-9 * n;
  std::size_t cumulative = 0;
  for (const auto& [d, count] : counts) {
    cumulative += count;
    if (static_cast<double>(cumulative) >= needed) return d;
  }
  return counts.rbegin()->first;
}

std::vector<DefectBin> bin_by_defects(std::span<const JoinedComponent> joined,
                                      std::int64_t d_max, double normalize) {
  if (d_max < 0) throw DomainError("bin_by_defects: d_max must be >= 0");
  if (!(normalize > 0.0)) throw DomainError("bin_by_defects: normalize must be > 0");
  std::map<std::int64_t, std::pair<std::size_t, double>> acc;
  for (const auto& j : joined) {
    if (j.d > d_max) continue;
    auto& [n, sum] = acc[j.d];
    ++n;
    sum += j.metrics.info;
  }
  if (acc.empty())
    throw InsufficientDataError(fmt::format("no components with at most {} defects", d_max));
  std::vector<DefectBin> bins;
  bins.reserve(acc.size());
  for (const auto& [d, ns] : acc)
    bins.push_back(DefectBin{d, ns.first, ns.second / static_cast<double>(ns.first) / normalize});
  return bins;
}

std::string format_bins_csv(std::span<const DefectBin> bins) {
  std::string out = "d,n,mean_info\n";
  for (const auto& b : bins) out += fmt::format("{},{},{:.10g}\n", b.d, b.n, b.mean_info);
  return out;
}

} // namespace defectlaw
