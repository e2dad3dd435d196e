#include "defectlaw/report.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace defectlaw {

namespace {

// Decimals needed so every finite value keeps `digits` significant digits.
int shared_decimals(std::span<const double> values, int digits) {
  int dec = 0;
  for (double v : values) {
    if (!std::isfinite(v) || v == 0.0) continue;
    const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(v))));
    dec = std::max(dec, digits - 1 - magnitude);
  }
  return std::min(dec, 15);
}

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return fmt::format("{:.{}f}", v, decimals);
}

std::string sig(double v, int digits) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return fmt::format("{:.{}g}", v, digits);
}

std::string pval(double p) {
  if (std::isnan(p)) return "NA";
  if (p < 2.2e-16) return "< 2e-16";
  return sig(p, 4);
}

std::string stars(double p) {
  if (std::isnan(p)) return "";
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.1) return ".";
  return "";
}

std::vector<std::string> format_column(std::span<const double> values, int digits) {
  const int dec = shared_decimals(values, digits);
  std::vector<std::string> out;
  for (double v : values) out.push_back(fixed(v, dec));
  return out;
}

std::vector<std::string> format_pvalues(std::span<const double> ps) {
  const bool any_small = std::any_of(ps.begin(), ps.end(), [](double p) { return p < 1e-4; });
  if (!any_small) return format_column(ps, 3);
  std::vector<std::string> out;
  for (double p : ps) out.push_back(p < 2.2e-16 ? "< 2e-16" : sig(p, 3));
  return out;
}

std::string pad_left(std::string_view s, std::size_t width) {
  return std::string(width > s.size() ? width - s.size() : 0, ' ') + std::string(s);
}

nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

} // namespace

std::string format_lm_summary(const RegressionSummary& s, std::string_view data_name) {
  std::string out;
  out += "Call:\n";
  out += fmt::format("lm(formula = y ~ x, data = {})\n\n", data_name);

  out += "Residuals:\n";
  const char* labels[] = {"Min", "1Q", "Median", "3Q", "Max"};
  const auto res = format_column(s.residual_quartiles, 4);
  std::string head;
  std::string vals;
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t w = std::max<std::size_t>(std::string_view(labels[k]).size(), res[k].size());
    head += pad_left(labels[k], w) + " ";
    vals += pad_left(res[k], w) + " ";
  }
  out += head + "\n" + vals + "\n\n";

  const double est[] = {s.intercept, s.slope};
  const double se[] = {s.se_intercept, s.se_slope};
  const double tv[] = {s.t_intercept, s.t_slope};
  const double pv[] = {s.p_intercept, s.p_slope};
  const auto est_s = format_column(est, 4);
  const auto se_s = format_column(se, 4);
  const auto t_s = format_column(tv, 3);
  const auto p_s = format_pvalues(pv);
  auto width = [](std::string_view header, const std::vector<std::string>& col) {
    std::size_t w = header.size();
    for (const auto& c : col) w = std::max(w, c.size());
    return w;
  };
  const std::size_t we = width("Estimate", est_s);
  const std::size_t ws = width("Std. Error", se_s);
  const std::size_t wt = width("t value", t_s);
  const std::size_t wp = width("Pr(>|t|)", p_s);
  out += "Coefficients:\n";
  out += fmt::format("{:<11} {} {} {} {}    \n", "", pad_left("Estimate", we),
                     pad_left("Std. Error", ws), pad_left("t value", wt),
                     pad_left("Pr(>|t|)", wp));
  const char* rows[] = {"(Intercept)", "x"};
  for (std::size_t k = 0; k < 2; ++k) {
    out += fmt::format("{:<11} {} {} {} {} {:<3}\n", rows[k], pad_left(est_s[k], we),
                       pad_left(se_s[k], ws), pad_left(t_s[k], wt), pad_left(p_s[k], wp),
                       stars(pv[k]));
  }
  out += "---\n\n";
  out += fmt::format("Residual standard error: {} on {} degrees of freedom\n", sig(s.rse, 4),
                     s.df);
  out += fmt::format("Multiple R-squared: {},     Adjusted R-squared: {} \n", sig(s.r2, 4),
                     sig(s.adj_r2, 4));
  out += fmt::format("F-statistic: {} on {} and {} DF,  p-value: {}\n", sig(s.f_stat, 4),
                     s.f_df.first, s.f_df.second, pval(s.f_pvalue));
  return out;
}

nlohmann::json to_json(const RegressionSummary& s) {
  const auto& q = s.residual_quartiles;
  return nlohmann::json{
      {"n", s.n},
      {"intercept", num(s.intercept)},
      {"slope", num(s.slope)},
      {"se_intercept", num(s.se_intercept)},
      {"se_slope", num(s.se_slope)},
      {"t_intercept", num(s.t_intercept)},
      {"t_slope", num(s.t_slope)},
      {"p_intercept", num(s.p_intercept)},
      {"p_slope", num(s.p_slope)},
      {"residual_quartiles",
       {{"min", num(q[0])}, {"q1", num(q[1])}, {"median", num(q[2])}, {"q3", num(q[3])},
        {"max", num(q[4])}}},
      {"rse", num(s.rse)},
      {"df", s.df},
      {"r2", num(s.r2)},
      {"adj_r2", num(s.adj_r2)},
      {"f_stat", num(s.f_stat)},
      {"f_df", {s.f_df.first, s.f_df.second}},
      {"f_pvalue", num(s.f_pvalue)},
  };
}

nlohmann::json to_json(const MaturityReport& r, const MaturityOptions& options) {
  return nlohmann::json{
      {"verdict", std::string(to_string(r.verdict))},
      {"cutoff_d", r.cutoff_d},
      {"d_max", r.d_max},
      {"bins_all", r.bins_all},
      {"bins_used", r.bins_used},
      {"adj_r2_all", num(r.adj_r2_all)},
      {"adj_r2_cut", num(r.adj_r2_cut)},
      {"p_value", num(r.p_value)},
      {"excluded_fraction", num(r.excluded_fraction)},
      {"fraction", options.fraction},
      {"r2_threshold", options.r2_threshold},
      {"alpha", options.alpha},
      {"normalize", options.normalize},
      {"fit_all", r.fit_all ? to_json(*r.fit_all) : nlohmann::json(nullptr)},
      {"fit_cut", r.fit_cut ? to_json(*r.fit_cut) : nlohmann::json(nullptr)},
  };
}

std::string format_maturity(const MaturityReport& r, const MaturityOptions& options) {
  std::string out;
  out += fmt::format("verdict:           {}\n", to_string(r.verdict));
  out += fmt::format("cutoff_d:          {}  ({:g}% of components have d <= cutoff)\n",
                     r.cutoff_d, options.fraction * 100.0);
  out += fmt::format("d_max:             {}\n", r.d_max);
  out += fmt::format("bins_all:          {}\n", r.bins_all);
  out += fmt::format("bins_used:         {}\n", r.bins_used);
  out += fmt::format("adj_r2_all:        {}\n", sig(r.adj_r2_all, 4));
  out += fmt::format("adj_r2_cut:        {}  (threshold {:g})\n", sig(r.adj_r2_cut, 4),
                     options.r2_threshold);
  out += fmt::format("p_value:           {}  (alpha {:g})\n", pval(r.p_value), options.alpha);
  out += fmt::format("excluded_fraction: {:.4f}\n", r.excluded_fraction);
  return out;
}

std::string format_system_summary(const SystemSummary& s) {
  return fmt::format("M = {}\nT = {}\nI = {:.6g}\n", s.M, s.T, s.I_total);
}

std::string render_bins_svg(std::span<const DefectBin> bins, const RegressionSummary* fit,
                            std::string_view title) {
  constexpr double width = 640, height = 480;
  constexpr double left = 70, right = 20, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_max = 0.0, y_max = 0.0;
  for (const auto& b : bins) {
    x_max = std::max(x_max, b.mean_info);
    y_max = std::max(y_max, static_cast<double>(b.d));
  }
  x_max = x_max > 0 ? x_max * 1.05 : 1.0;
  y_max = y_max > 0 ? y_max * 1.05 : 1.0;
  auto px = [&](double x) { return left + plot_w * x / x_max; };
  auto py = [&](double y) { return top + plot_h * (1.0 - y / y_max); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      width, height);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
  svg += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"15\">{}</text>\n",
                     width / 2, title);
  svg += fmt::format("<g class=\"axes\" stroke=\"black\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" "
                     "y2=\"{1}\"/><line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/></g>\n",
                     left, top + plot_h, left + plot_w, top);
  for (int k = 0; k <= 5; ++k) {
    const double xv = x_max * k / 5.0;
    const double yv = y_max * k / 5.0;
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" "
                       "font-family=\"sans-serif\" font-size=\"11\">{:.3g}</text>\n",
                       px(xv), top + plot_h + 18, xv);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" "
                       "font-family=\"sans-serif\" font-size=\"11\">{:.3g}</text>\n",
                       left - 6, py(yv) + 4, yv);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"13\">mean t ln(a)</text>\n",
                     left + plot_w / 2, height - 15);
  svg += fmt::format("<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"13\" transform=\"rotate(-90 18 {0})\">defects</text>\n",
                     top + plot_h / 2);
  for (const auto& b : bins) {
    svg += fmt::format("<circle class=\"point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" "
                       "fill=\"steelblue\"><title>d={} n={} mean_info={:.6g}</title></circle>\n",
                       px(b.mean_info), py(static_cast<double>(b.d)), b.d, b.n, b.mean_info);
  }
  if (fit) {
    // Clip the fitted line to the plotting box.
    double xa = 0.0, xb = x_max;
    auto line_y = [&](double x) { return fit->intercept + fit->slope * x; };
    if (fit->slope != 0.0) {
      const double x_at_0 = -fit->intercept / fit->slope;
      const double x_at_top = (y_max - fit->intercept) / fit->slope;
      xa = std::max(xa, std::min(x_at_0, x_at_top));
      xb = std::min(xb, std::max(x_at_0, x_at_top));
    }
    if (xa < xb && line_y(xa) >= -1e-9 && line_y(xa) <= y_max * (1 + 1e-9)) {
      svg += fmt::format("<line class=\"fit\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
                         "y2=\"{:.2f}\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n",
                         px(xa), py(line_y(xa)), px(xb), py(line_y(xb)));
    }
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace defectlaw
