#include "defectlaw/metrics.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "defectlaw/csv.hpp"
#include "defectlaw/error.hpp"

namespace defectlaw {

double information_content(std::int64_t t, std::int64_t a) {
  if (t < 1) throw DomainError("information_content: t must be >= 1");
  if (a < 1 || a > t)
    throw DomainError(fmt::format("information_content: alphabet {} outside [1, {}]", a, t));
  return static_cast<double>(t) * std::log(static_cast<double>(a));
}

ComponentMetrics measure(const Component& component) {
  if (component.tokens.empty())
    throw DomainError("measure: component '" + component.id + "' has no tokens");
  std::unordered_set<std::string_view> alphabet;
  for (const Token& tok : component.tokens) alphabet.insert(tok.spelling);
  ComponentMetrics m;
  m.id = component.id;
  m.t = static_cast<std::int64_t>(component.tokens.size());
  m.a = static_cast<std::int64_t>(alphabet.size());
  m.info = information_content(m.t, m.a);
  return m;
}

std::vector<ComponentMetrics> measure_all(std::span<const Component> components,
                                          std::vector<std::string>& warnings) {
  std::vector<ComponentMetrics> out;
  out.reserve(components.size());
  for (const Component& c : components) {
    if (c.tokens.empty()) {
      warnings.push_back(c.id + ": empty component skipped");
      continue;
    }
    out.push_back(measure(c));
  }
  return out;
}

SystemSummary summarize(std::span<const ComponentMetrics> metrics) {
  if (metrics.empty()) throw Error("summarize: no components");
  SystemSummary s;
  s.M = metrics.size();
  for (const auto& m : metrics) {
    s.T += m.t;
    s.I_total += m.info;
  }
  return s;
}

std::string format_metrics_csv(std::span<const ComponentMetrics> metrics) {
  std::string out = "id,t,a,info\n";
  for (const auto& m : metrics)
    out += fmt::format("{},{},{},{:.6g}\n", csv::quote(m.id), m.t, m.a, m.info);
  return out;
}

std::vector<ComponentMetrics> load_metrics(const std::filesystem::path& path) {
  const auto rows = csv::read_table(path, {"id", "t", "a", "info"});
  std::vector<ComponentMetrics> out;
  std::unordered_set<std::string> ids;
  for (const auto& row : rows) {
    ComponentMetrics m;
    m.id = row.fields[0];
    if (m.id.empty()) throw DataError("column 'id': empty id", row.line);
    if (!ids.insert(m.id).second) throw DataError("duplicate id '" + m.id + "'", row.line);
    m.t = csv::parse_int(row.fields[1], row.line, "t");
    m.a = csv::parse_int(row.fields[2], row.line, "a");
    const double stored = csv::parse_real(row.fields[3], row.line, "info");
    if (m.t < 0) throw DataError("column 't': negative token count", row.line);
    if (m.t == 0) continue;
    if (m.a < 1 || m.a > m.t) throw DataError("column 'a': alphabet outside [1, t]", row.line);
    m.info = information_content(m.t, m.a);
    if (std::abs(stored - m.info) > 1e-5 * std::max(1.0, m.info))
      throw DataError(fmt::format("column 'info': {} disagrees with t*ln(a) = {:.6g}",
                                  row.fields[3], m.info),
                      row.line);
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace defectlaw
