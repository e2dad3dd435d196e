#pragma once

// Simple linear regression with the full set of summary statistics printed by
// R's summary(lm(y ~ x)): coefficient standard errors, t values, two-sided
// p-values, residual quartiles, residual standard error, R², adjusted R² and
// the overall F test. Tail probabilities come from the regularized incomplete
// beta function, evaluated by a modified-Lentz continued fraction.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace defectlaw {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct RegressionSummary {
  std::size_t n = 0;
  double intercept = 0.0;
  double slope = 0.0;
  double se_intercept = 0.0;
  double se_slope = 0.0;
  double t_intercept = 0.0;
  double t_slope = 0.0;
  double p_intercept = 1.0;
  double p_slope = 1.0;
  std::array<double, 5> residual_quartiles{};  // min, q1, median, q3, max
  double rse = 0.0;
  std::int64_t df = 0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  std::pair<std::int64_t, std::int64_t> f_df{1, 0};
  double f_pvalue = 1.0;
  std::vector<double> residuals;
};

// OLS with intercept. InsufficientDataError for n < 3, DegenerateDesignError
// when all x are equal, DomainError for non-finite input.
RegressionSummary ols_fit(std::span<const Point> points);

// 1 - (1 - r2)(n - 1)/(n - k - 1). DomainError unless n > k + 1 and r2 in [0, 1].
double adjusted_r2(double r2, std::int64_t n, std::int64_t k);

// I_x(a, b) to absolute error 1e-12. Throws ConvergenceError if the continued
// fraction has not converged after 300 iterations.
double reg_inc_beta(double x, double a, double b);

// P(F(d1, d2) > f).
double f_pvalue(double f, std::int64_t d1, std::int64_t d2);

// 2 P(T(df) > |t|).
double t_pvalue_two_sided(double t, std::int64_t df);

// Sample quantile with linear interpolation between order statistics (R type 7).
double quantile_type7(std::span<const double> sorted, double p);

} // namespace defectlaw
