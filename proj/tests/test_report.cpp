#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <regex>

#include "defectlaw/analysis.hpp"
#include "defectlaw/report.hpp"
#include "defectlaw/stats.hpp"

using namespace defectlaw;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

RegressionSummary four_point() {
  const std::vector<Point> p = {{0, 0}, {1, 1}, {2, 2}, {3, 2}};
  return ols_fit(p);
}

} // namespace

TEST_CASE("lm summary block layout") {
  const auto text = format_lm_summary(four_point(), "universe");
  CHECK(text.starts_with("Call:\nlm(formula = y ~ x, data = universe)\n\nResiduals:\n"));
  CHECK(text.find("Coefficients:\n") != std::string::npos);
  CHECK(text.find("Estimate Std. Error t value Pr(>|t|)") != std::string::npos);
  CHECK(text.find("(Intercept)") != std::string::npos);
  CHECK(text.find("\n---\n") != std::string::npos);
  CHECK(text.find("Residual standard error: 0.3873 on 2 degrees of freedom\n") != std::string::npos);
  CHECK(text.find("Multiple R-squared: 0.8909,     Adjusted R-squared: 0.8364 \n") !=
        std::string::npos);
  CHECK(text.find("F-statistic: 16.33 on 1 and 2 DF,  p-value: ") != std::string::npos);
  CHECK(std::regex_search(text, std::regex(R"(\nx\s+0\.7000\s+0\.1732\s+4\.041\s+0\.0561)")));
}

TEST_CASE("lm summary uses scientific p-values when tiny") {
  const std::vector<Point> p = {{1, 2.0}, {2, 4.0001}, {3, 6.0}, {4, 7.9999}, {5, 10.0}};
  const auto text = format_lm_summary(ols_fit(p));
  CHECK(text.find("e-") != std::string::npos);
  CHECK(text.find("***") != std::string::npos);
}

TEST_CASE("regression JSON") {
  const auto j = to_json(four_point());
  for (const char* key : {"n", "intercept", "slope", "se_intercept", "se_slope", "t_intercept",
                          "t_slope", "p_intercept", "p_slope", "residual_quartiles", "rse", "df",
                          "r2", "adj_r2", "f_stat", "f_df", "f_pvalue"})
    CHECK(j.contains(key));
  CHECK(j["n"] == 4);
  CHECK(j["df"] == 2);
  CHECK(j["f_df"] == nlohmann::json::array({1, 2}));
  CHECK(j["slope"].get<double>() == doctest::Approx(0.7));
  CHECK(j["residual_quartiles"].contains("median"));

  auto s = four_point();
  s.t_slope = INFINITY;
  s.p_slope = NAN;
  const auto k = to_json(s);
  CHECK(k["t_slope"].is_null());
  CHECK(k["p_slope"].is_null());
}

TEST_CASE("maturity text and JSON") {
  std::vector<JoinedComponent> few = {{{"a", 10, 2, 6.9}, 0, 0}, {{"b", 10, 2, 6.9}, 1, 0.1}};
  MaturityOptions o;
  const auto r = maturity_assess(few, o);
  const auto j = to_json(r, o);
  CHECK(j["verdict"] == "insufficient-data");
  CHECK(j["adj_r2_cut"].is_null());
  CHECK(j["fit_cut"].is_null());
  for (const char* key : {"cutoff_d", "d_max", "bins_all", "bins_used", "adj_r2_all", "p_value",
                          "excluded_fraction", "fraction", "r2_threshold", "alpha", "normalize",
                          "fit_all"})
    CHECK(j.contains(key));
  const auto text = format_maturity(r, o);
  CHECK(text.starts_with("verdict:           insufficient-data\n"));
  CHECK(text.find("excluded_fraction:") != std::string::npos);
}

TEST_CASE("system summary") {
  CHECK(format_system_summary({2, 7, 5.545177444}) == "M = 2\nT = 7\nI = 5.54518\n");
}

TEST_CASE("svg structure") {
  const std::vector<DefectBin> bins = {{0, 10, 5.0}, {1, 4, 9.0}, {2, 2, 14.0}, {3, 1, 20.0}};
  std::vector<Point> pts;
  for (const auto& b : bins) pts.push_back({b.mean_info, static_cast<double>(b.d)});
  const auto fit = ols_fit(pts);

  const auto svg = render_bins_svg(bins, &fit, "all bins");
  CHECK(svg.starts_with("<svg "));
  CHECK(svg.ends_with("</svg>\n"));
  CHECK(count(svg, "<circle class=\"point\"") == 4);
  CHECK(count(svg, "<line class=\"fit\"") == 1);
  CHECK(svg.find("all bins") != std::string::npos);

  const auto bare = render_bins_svg(bins, nullptr, "no fit");
  CHECK(count(bare, "<line class=\"fit\"") == 0);
  CHECK(count(render_bins_svg({}, nullptr, "empty"), "<circle") == 0);
}
