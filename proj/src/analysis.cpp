#include "defectlaw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "defectlaw/error.hpp"

namespace defectlaw {

namespace {

std::vector<Point> bin_points(std::span<const DefectBin> bins) {
  std::vector<Point> pts;
  pts.reserve(bins.size());
  for (const auto& b : bins) pts.push_back(Point{b.mean_info, static_cast<double>(b.d)});
  return pts;
}

std::optional<RegressionSummary> try_fit(std::span<const DefectBin> bins) {
  if (bins.size() < 3) return std::nullopt;
  try {
    return ols_fit(bin_points(bins));
  } catch (const DegenerateDesignError&) {
    return std::nullopt;
  }
}

} // namespace

RegressionSummary defect_law_regression(std::span<const JoinedComponent> joined,
                                        std::int64_t d_max, double normalize) {
  const auto bins = bin_by_defects(joined, d_max, normalize);
  if (bins.size() < 3)
    throw InsufficientDataError("defect_law_regression: only " + std::to_string(bins.size()) +
                                " occupied defect levels, need 3");
  return ols_fit(bin_points(bins));
}

RegressionSummary size_class_regression(std::span<const JoinedComponent> joined) {
  std::map<double, std::pair<std::size_t, double>> classes;
  for (const auto& j : joined) {
    auto& [n, sum] = classes[j.metrics.info];
    ++n;
    sum += static_cast<double>(j.d);
  }
  std::vector<Point> pts;
  pts.reserve(classes.size());
  for (const auto& [info, ns] : classes)
    pts.push_back(Point{info, ns.second / static_cast<double>(ns.first)});
  return ols_fit(pts);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::equilibrated: return "equilibrated";
    case Verdict::not_equilibrated: return "not-equilibrated";
    case Verdict::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

MaturityReport maturity_assess(std::span<const JoinedComponent> joined,
                               const MaturityOptions& options) {
  if (joined.empty()) throw InsufficientDataError("maturity_assess: no joined components");
  if (!(options.fraction > 0.0 && options.fraction <= 1.0))
    throw DomainError("maturity_assess: fraction must be in (0, 1]");
  if (!(options.r2_threshold > 0.0 && options.r2_threshold < 1.0))
    throw DomainError("maturity_assess: r2 threshold must be in (0, 1)");
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw DomainError("maturity_assess: alpha must be in (0, 1)");
  if (!(options.normalize > 0.0)) throw DomainError("maturity_assess: normalize must be > 0");
  if (options.d_max && *options.d_max < 0) throw DomainError("maturity_assess: d_max must be >= 0");

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  MaturityReport r;
  r.cutoff_d = coverage_cutoff(joined, options.fraction);
  r.d_max = options.d_max.value_or(coverage_cutoff(joined, kAutoCapCoverage));

  std::size_t excluded = 0;
  for (const auto& j : joined)
    if (j.d > r.cutoff_d) ++excluded;
  r.excluded_fraction = static_cast<double>(excluded) / static_cast<double>(joined.size());

  try {
    r.bins = bin_by_defects(joined, r.d_max, options.normalize);
  } catch (const InsufficientDataError&) {
    r.bins.clear();
  }
  r.bins_all = r.bins.size();
  r.fit_all = try_fit(r.bins);
  r.adj_r2_all = r.fit_all ? r.fit_all->adj_r2 : nan;

  std::vector<DefectBin> cut;
  for (const auto& b : r.bins)
    if (b.d <= r.cutoff_d) cut.push_back(b);
  r.bins_used = cut.size();
  r.fit_cut = try_fit(cut);
  r.adj_r2_cut = r.fit_cut ? r.fit_cut->adj_r2 : nan;
  r.p_value = r.fit_cut ? r.fit_cut->p_slope : nan;

  if (!r.fit_cut) {
    r.verdict = Verdict::insufficient_data;
  } else if (r.adj_r2_cut >= options.r2_threshold && r.p_value <= options.alpha &&
             r.fit_cut->slope > 0.0) {
    r.verdict = Verdict::equilibrated;
  } else {
    r.verdict = Verdict::not_equilibrated;
  }
  return r;
}

PowerLawFit powerlaw_check(std::span<const ComponentMetrics> metrics, std::size_t n_bins) {
  if (n_bins < 3) throw DomainError("powerlaw_check: need at least 3 bins");
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& m : metrics) {
    if (m.a < 1) throw DomainError("powerlaw_check: alphabet sizes must be >= 1");
    ++counts[m.a];
  }
  if (counts.size() < 3)
    throw InsufficientDataError("powerlaw_check: need at least 3 distinct alphabet sizes");

  const double lo = std::log(static_cast<double>(counts.begin()->first));
  const double hi = std::log(static_cast<double>(counts.rbegin()->first + 1));
  std::set<std::int64_t> edge_set;
  for (std::size_t k = 0; k <= n_bins; ++k) {
    const double e = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_bins);
    edge_set.insert(std::llround(std::exp(e)));
  }
  edge_set.insert(counts.begin()->first);
  edge_set.insert(counts.rbegin()->first + 1);
  const std::vector<std::int64_t> edges(edge_set.begin(), edge_set.end());

  const double total = static_cast<double>(metrics.size());
  std::vector<Point> pts;
  auto it = counts.begin();
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const std::int64_t left = edges[b];
    const std::int64_t right = edges[b + 1];  // exclusive
    std::size_t in_bin = 0;
    while (it != counts.end() && it->first < right) {
      if (it->first >= left) in_bin += it->second;
      ++it;
    }
    if (in_bin == 0) continue;
    const double width = static_cast<double>(right - left);
    const double centre = std::sqrt(static_cast<double>(left) * static_cast<double>(right - 1));
    pts.push_back(Point{std::log(centre), std::log(static_cast<double>(in_bin) / (total * width))});
  }
  if (pts.size() < 3)
    throw InsufficientDataError("powerlaw_check: fewer than 3 occupied bins");
  const RegressionSummary fit = ols_fit(pts);
  return PowerLawFit{-fit.slope, fit.r2, pts.size()};
}

} // namespace defectlaw
