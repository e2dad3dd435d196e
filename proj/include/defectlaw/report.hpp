#pragma once

#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "defectlaw/analysis.hpp"
#include "defectlaw/metrics.hpp"
#include "defectlaw/stats.hpp"

namespace defectlaw {

// Text block laid out like R's print(summary(lm(y ~ x))):
//
//   Call:
//   lm(formula = y ~ x, data = <data_name>)
//
//   Residuals:
//       Min      1Q  Median      3Q     Max
//   ...
//   Coefficients:
//               Estimate Std. Error t value Pr(>|t|)
//   (Intercept)      ...
//   x                ...
//   ---
//
//   Residual standard error: <rse> on <df> degrees of freedom
//   Multiple R-squared: <r2>,     Adjusted R-squared: <adj_r2>
//   F-statistic: <f> on 1 and <df> DF,  p-value: <p>
//
// Estimates and standard errors share decimals so the smallest magnitude in a
// column keeps 4 significant digits (3 for t values), as R does.
std::string format_lm_summary(const RegressionSummary& s, std::string_view data_name = "bins");

// Keys: n, intercept, slope, se_intercept, se_slope, t_intercept, t_slope,
// p_intercept, p_slope, residual_quartiles {min,q1,median,q3,max}, rse, df,
// r2, adj_r2, f_stat, f_df [1, df], f_pvalue. Non-finite values become null.
nlohmann::json to_json(const RegressionSummary& s);

// Keys: verdict, cutoff_d, d_max, bins_all, bins_used, adj_r2_all,
// adj_r2_cut, p_value, excluded_fraction, fraction, r2_threshold, alpha,
// normalize, fit_all, fit_cut (regression objects or null).
nlohmann::json to_json(const MaturityReport& r, const MaturityOptions& options);

std::string format_maturity(const MaturityReport& r, const MaturityOptions& options);

std::string format_system_summary(const SystemSummary& s);

// Scatter of bins (x = mean t ln a, y = defects) with the fitted line when
// `fit` is given. Points are <circle class="point">, the fit is
// <line class="fit">.
std::string render_bins_svg(std::span<const DefectBin> bins, const RegressionSummary* fit,
                            std::string_view title);

} // namespace defectlaw
