#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "defectlaw/defects.hpp"
#include "defectlaw/stats.hpp"

namespace defectlaw {

// Bins components by defect count up to d_max and regresses y = d on
// x = mean t ln a (divided by `normalize`).
RegressionSummary defect_law_regression(std::span<const JoinedComponent> joined,
                                        std::int64_t d_max, double normalize = 1.0);

// Regresses the mean defect count of each distinct size class (components
// sharing one value of t ln a) on that value. With a fixed alphabet the
// intercept tests proportionality of defects to t.
RegressionSummary size_class_regression(std::span<const JoinedComponent> joined);

enum class Verdict { equilibrated, not_equilibrated, insufficient_data };

std::string_view to_string(Verdict verdict);

inline constexpr double kAutoCapCoverage = 0.99;

struct MaturityOptions {
  double fraction = 0.95;
  double r2_threshold = 0.9;
  double alpha = 0.01;
  double normalize = 1.0;
  // Global cap on defect levels; unset means the level covering 99% of components.
  std::optional<std::int64_t> d_max;
};

struct MaturityReport {
  std::int64_t cutoff_d = 0;
  std::int64_t d_max = 0;
  std::size_t bins_all = 0;
  std::size_t bins_used = 0;
  double adj_r2_all = 0.0;  // NaN when the full fit is impossible
  double adj_r2_cut = 0.0;  // NaN when the cut fit is impossible
  double p_value = 1.0;
  Verdict verdict = Verdict::insufficient_data;
  double excluded_fraction = 0.0;
  std::vector<DefectBin> bins;  // all bins up to d_max
  std::optional<RegressionSummary> fit_all;
  std::optional<RegressionSummary> fit_cut;
};

// Equilibrated requires adj_r2_cut >= r2_threshold, slope p-value <= alpha
// and a positive slope. Fewer than 3 bins at or below the cutoff gives
// insufficient_data.
MaturityReport maturity_assess(std::span<const JoinedComponent> joined,
                               const MaturityOptions& options = {});

struct PowerLawFit {
  double beta_hat = 0.0;
  double fit_r2 = 0.0;
  std::size_t n_points = 0;
};

// Log-binned frequency density of alphabet sizes, fitted on log-log axes.
// Bin edges are spaced evenly in ln a over [min a, max a + 1) and rounded to
// integers; each bin's density is count / (M * integers in bin) placed at the
// geometric centre of its integer range.
PowerLawFit powerlaw_check(std::span<const ComponentMetrics> metrics, std::size_t n_bins = 20);

} // namespace defectlaw
