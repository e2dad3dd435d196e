#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

// I_x(a, b) by quadrature of t^(a-1) (1-t)^(b-1); a, b >= 1 keeps the
// integrand bounded.
inline double incomplete_beta_quadrature(double x, double a, double b) {
  auto integrand = [=](double t) { return std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); };
  return integrate(integrand, 0.0, x) / integrate(integrand, 0.0, 1.0);
}

// I_x(a, b) for integer a, b via the binomial tail.
inline double incomplete_beta_binomial(double x, int a, int b) {
  const int n = a + b - 1;
  double sum = 0.0;
  for (int j = a; j <= n; ++j) {
    double c = 1.0;
    for (int k = 1; k <= j; ++k) c = c * (n - j + k) / k;
    sum += c * std::pow(x, j) * std::pow(1.0 - x, n - j);
  }
  return sum;
}

struct LineFit {
  double intercept, slope, r2, se_intercept, se_slope;
};

// Solves (X'X) beta = X'y with the explicit 2x2 inverse.
inline LineFit normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sy += y[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const std::array<std::array<double, 2>, 2> inv = {{{sxx / det, -sx / det}, {-sx / det, n / det}}};
  const double b0 = inv[0][0] * sy + inv[0][1] * sxy;
  const double b1 = inv[1][0] * sy + inv[1][1] * sxy;
  double sse = 0, sst = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - b0 - b1 * x[i];
    sse += e * e;
    sst += (y[i] - ybar) * (y[i] - ybar);
  }
  const double s2 = sse / (n - 2.0);
  return {b0, b1, 1.0 - sse / sst, std::sqrt(s2 * inv[0][0]), std::sqrt(s2 * inv[1][1])};
}

// All vectors of `parts` non-negative integers summing to `total`.
inline std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::size_t parts) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur(parts, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, total);
  return out;
}

// Upper regularized gamma Q(s, x): series for x < s + 1, Legendre continued
// fraction otherwise.
inline double upper_gamma_q(double s, double x) {
  if (x <= 0) return 1.0;
  const double log_front = s * std::log(x) - x - std::lgamma(s);
  if (x < s + 1.0) {
    double term = 1.0 / s, sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (s + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_front);
  }
  double b = x + 1.0 - s, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(log_front) * h;
}

inline double chi_square_pvalue(double statistic, int dof) {
  return upper_gamma_q(dof / 2.0, statistic / 2.0);
}

} // namespace oracle
