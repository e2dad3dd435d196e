#include "defectlaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "defectlaw/error.hpp"

namespace defectlaw {

namespace {

constexpr int kMaxIterations = 300;
constexpr double kEpsilon = 1e-15;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), valid for x < (a + 1)/(a + b + 2).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  throw ConvergenceError("reg_inc_beta: continued fraction did not converge");
}

} // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must be in [0, 1]");
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("reg_inc_beta: a and b must be positive and finite");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_pvalue(double f, std::int64_t d1, std::int64_t d2) {
  if (std::isnan(f) || f < 0.0) throw DomainError("f_pvalue: statistic must be >= 0");
  if (d1 < 1 || d2 < 1) throw DomainError("f_pvalue: degrees of freedom must be >= 1");
  if (std::isinf(f)) return 0.0;
  const double n1 = static_cast<double>(d1);
  const double n2 = static_cast<double>(d2);
  return reg_inc_beta(n2 / (n2 + n1 * f), n2 / 2.0, n1 / 2.0);
}

double t_pvalue_two_sided(double t, std::int64_t df) {
  if (std::isnan(t)) throw DomainError("t_pvalue_two_sided: statistic is NaN");
  if (df < 1) throw DomainError("t_pvalue_two_sided: df must be >= 1");
  if (std::isinf(t)) return 0.0;
  const double v = static_cast<double>(df);
  return reg_inc_beta(v / (v + t * t), v / 2.0, 0.5);
}

double adjusted_r2(double r2, std::int64_t n, std::int64_t k) {
  if (!(r2 >= 0.0 && r2 <= 1.0)) throw DomainError("adjusted_r2: r2 must be in [0, 1]");
  if (k < 0 || n <= k + 1) throw DomainError("adjusted_r2: need n > k + 1");
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - k - 1);
}

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile_type7: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile_type7: p must be in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

RegressionSummary ols_fit(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 3) throw InsufficientDataError("ols_fit: need at least 3 points");
  for (const Point& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("ols_fit: non-finite point");

  const double nd = static_cast<double>(n);
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const Point& p : points) {
    mean_x += p.x;
    mean_y += p.y;
  }
  mean_x /= nd;
  mean_y /= nd;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const Point& p : points) {
    const double dx = p.x - mean_x;
    const double dy = p.y - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DegenerateDesignError("ols_fit: x has zero variance");

  RegressionSummary s;
  s.n = n;
  s.df = static_cast<std::int64_t>(n) - 2;
  s.slope = sxy / sxx;
  s.intercept = mean_y - s.slope * mean_x;

  s.residuals.reserve(n);
  double sse = 0.0;
  for (const Point& p : points) {
    // Centered form keeps residuals exact under rescaling of x.
    const double e = (p.y - mean_y) - s.slope * (p.x - mean_x);
    s.residuals.push_back(e);
    sse += e * e;
  }
  const double dfd = static_cast<double>(s.df);
  const double sigma2 = sse / dfd;
  s.rse = std::sqrt(sigma2);
  s.se_slope = std::sqrt(sigma2 / sxx);
  s.se_intercept = std::sqrt(sigma2 * (1.0 / nd + mean_x * mean_x / sxx));

  auto ratio = [](double est, double se) {
    if (se > 0.0) return est / se;
    if (est == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), est);
  };
  s.t_intercept = ratio(s.intercept, s.se_intercept);
  s.t_slope = ratio(s.slope, s.se_slope);
  s.p_intercept = t_pvalue_two_sided(s.t_intercept, s.df);
  s.p_slope = t_pvalue_two_sided(s.t_slope, s.df);

  s.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
  s.adj_r2 = adjusted_r2(s.r2, static_cast<std::int64_t>(n), 1);
  s.f_stat = s.t_slope * s.t_slope;
  s.f_df = {1, s.df};
  s.f_pvalue = f_pvalue(s.f_stat, 1, s.df);

  std::vector<double> sorted = s.residuals;
  std::sort(sorted.begin(), sorted.end());
  s.residual_quartiles = {sorted.front(), quantile_type7(sorted, 0.25),
                          quantile_type7(sorted, 0.5), quantile_type7(sorted, 0.75),
                          sorted.back()};
  return s;
}

} // namespace defectlaw
