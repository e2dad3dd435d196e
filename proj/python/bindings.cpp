#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "defectlaw/analysis.hpp"
#include "defectlaw/component.hpp"
#include "defectlaw/defects.hpp"
#include "defectlaw/error.hpp"
#include "defectlaw/lexer.hpp"
#include "defectlaw/metrics.hpp"
#include "defectlaw/report.hpp"
#include "defectlaw/scan.hpp"
#include "defectlaw/simulator.hpp"
#include "defectlaw/stats.hpp"

namespace py = pybind11;
using namespace defectlaw;

namespace {

Language language_arg(const std::string& name) {
  const auto lang = parse_language(name);
  if (!lang) throw py::value_error("unknown language '" + name + "'");
  return *lang;
}

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point> pts;
  pts.reserve(xy.size());
  for (const auto& [x, y] : xy) pts.push_back({x, y});
  return pts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Token/alphabet metrics, defect-law regression and ensemble simulation";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
  py::register_exception<DegenerateDesignError>(m, "DegenerateDesignError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<LexError>(m, "LexError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());

  py::class_<Token>(m, "Token")
      .def_readonly("spelling", &Token::spelling)
      .def_property_readonly("kind", [](const Token& t) { return std::string(to_string(t.kind)); })
      .def_readonly("line", &Token::line)
      .def("__repr__", [](const Token& t) {
        return "Token(" + py::repr(py::str(t.spelling)).cast<std::string>() + ", " +
               std::string(to_string(t.kind)) + ", line " + std::to_string(t.line) + ")";
      });

  m.def("tokenize", [](const std::string& src, const std::string& language) {
        return tokenize(src, language_arg(language));
      }, py::arg("source"), py::arg("language") = "c-like");

  py::class_<ComponentMetrics>(m, "ComponentMetrics")
      .def(py::init<std::string, std::int64_t, std::int64_t, double>(), py::arg("id"),
           py::arg("t"), py::arg("a"), py::arg("info"))
      .def_readonly("id", &ComponentMetrics::id)
      .def_readonly("t", &ComponentMetrics::t)
      .def_readonly("a", &ComponentMetrics::a)
      .def_readonly("info", &ComponentMetrics::info)
      .def("__repr__", [](const ComponentMetrics& c) {
        return "ComponentMetrics(" + c.id + ", t=" + std::to_string(c.t) +
               ", a=" + std::to_string(c.a) + ")";
      });

  py::class_<SystemSummary>(m, "SystemSummary")
      .def_readonly("M", &SystemSummary::M)
      .def_readonly("T", &SystemSummary::T)
      .def_readonly("I_total", &SystemSummary::I_total);

  m.def("information_content", &information_content, py::arg("t"), py::arg("a"));
  m.def("measure_source", [](const std::string& id, const std::string& src,
                             const std::string& language) {
        return measure(Component{id, tokenize(src, language_arg(language))});
      }, py::arg("id"), py::arg("source"), py::arg("language") = "c-like");
  m.def("summarize", [](const std::vector<ComponentMetrics>& ms) { return summarize(ms); });
  m.def("load_metrics", &load_metrics, py::arg("path"));
  m.def("scan_tree", [](const std::filesystem::path& root, std::optional<std::string> language,
                        const std::string& granularity) {
        ScanOptions opts;
        if (language) opts.language = language_arg(*language);
        const auto g = parse_granularity(granularity);
        if (!g) throw py::value_error("unknown granularity '" + granularity + "'");
        opts.granularity = *g;
        ScanResult r = scan_tree(root, opts);
        std::vector<std::string> warnings = r.warnings;
        auto metrics = measure_all(r.components, warnings);
        return py::make_tuple(metrics, warnings);
      }, py::arg("root"), py::arg("language") = py::none(), py::arg("granularity") = "file",
      "Returns (metrics, warnings).");

  py::class_<DefectRecord>(m, "DefectRecord")
      .def(py::init<std::string, std::int64_t>(), py::arg("component_id"), py::arg("d"))
      .def_readonly("component_id", &DefectRecord::component_id)
      .def_readonly("d", &DefectRecord::d);
  py::class_<JoinedComponent>(m, "JoinedComponent")
      .def_readonly("metrics", &JoinedComponent::metrics)
      .def_readonly("d", &JoinedComponent::d)
      .def_readonly("density", &JoinedComponent::density);
  py::class_<DefectBin>(m, "DefectBin")
      .def_readonly("d", &DefectBin::d)
      .def_readonly("n", &DefectBin::n)
      .def_readonly("mean_info", &DefectBin::mean_info);

  m.def("load_defects", &load_defects, py::arg("path"));
  m.def("join", [](const std::vector<ComponentMetrics>& ms, const std::vector<DefectRecord>& recs,
                   const std::string& missing) {
        const auto policy = parse_missing_policy(missing);
        if (!policy) throw py::value_error("missing must be 'zero' or 'skip'");
        JoinResult r = join(ms, recs, *policy);
        return py::make_tuple(r.joined, r.orphans);
      }, py::arg("metrics"), py::arg("records"), py::arg("missing") = "zero",
      "Returns (joined, orphans).");
  m.def("coverage_cutoff", [](const std::vector<JoinedComponent>& j, double f) {
        return coverage_cutoff(j, f);
      }, py::arg("joined"), py::arg("fraction") = 0.95);
  m.def("bin_by_defects", [](const std::vector<JoinedComponent>& j, std::int64_t d_max,
                             double normalize) { return bin_by_defects(j, d_max, normalize); },
        py::arg("joined"), py::arg("d_max"), py::arg("normalize") = 1.0);

  py::class_<RegressionSummary>(m, "RegressionSummary")
      .def_readonly("n", &RegressionSummary::n)
      .def_readonly("intercept", &RegressionSummary::intercept)
      .def_readonly("slope", &RegressionSummary::slope)
      .def_readonly("se_intercept", &RegressionSummary::se_intercept)
      .def_readonly("se_slope", &RegressionSummary::se_slope)
      .def_readonly("t_intercept", &RegressionSummary::t_intercept)
      .def_readonly("t_slope", &RegressionSummary::t_slope)
      .def_readonly("p_intercept", &RegressionSummary::p_intercept)
      .def_readonly("p_slope", &RegressionSummary::p_slope)
      .def_readonly("residual_quartiles", &RegressionSummary::residual_quartiles)
      .def_readonly("rse", &RegressionSummary::rse)
      .def_readonly("df", &RegressionSummary::df)
      .def_readonly("r2", &RegressionSummary::r2)
      .def_readonly("adj_r2", &RegressionSummary::adj_r2)
      .def_readonly("f_stat", &RegressionSummary::f_stat)
      .def_readonly("f_df", &RegressionSummary::f_df)
      .def_readonly("f_pvalue", &RegressionSummary::f_pvalue)
      .def_readonly("residuals", &RegressionSummary::residuals)
      .def("summary", [](const RegressionSummary& s) { return format_lm_summary(s); });

  m.def("ols_fit", [](const std::vector<std::pair<double, double>>& xy) {
        return ols_fit(to_points(xy));
      }, py::arg("points"), "OLS of y on x for a sequence of (x, y) pairs.");
  m.def("adjusted_r2", &adjusted_r2, py::arg("r2"), py::arg("n"), py::arg("k") = 1);
  m.def("reg_inc_beta", &reg_inc_beta, py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("f_pvalue", &f_pvalue, py::arg("f"), py::arg("d1"), py::arg("d2"));
  m.def("t_pvalue_two_sided", &t_pvalue_two_sided, py::arg("t"), py::arg("df"));

  py::class_<EnsembleSpec>(m, "EnsembleSpec")
      .def(py::init([](std::size_t M, double beta, std::int64_t a_min, std::int64_t a_max,
                       const std::string& token_rule, double token_scale, double defect_rate,
                       std::uint64_t seed) {
             EnsembleSpec s;
             s.M = M;
             s.beta = beta;
             s.a_min = a_min;
             s.a_max = a_max;
             const auto rule = parse_token_rule(token_rule);
             if (!rule) throw py::value_error("unknown token rule '" + token_rule + "'");
             s.t_of_a = {*rule, token_scale};
             s.defect_rate = defect_rate;
             s.seed = seed;
             s.validate();
             return s;
           }),
           py::arg("M") = 1000, py::arg("beta") = 2.0, py::arg("a_min") = 2,
           py::arg("a_max") = 1024, py::arg("token_rule") = "proportional",
           py::arg("token_scale") = 4.0, py::arg("defect_rate") = 0.0, py::arg("seed") = 1)
      .def_readonly("M", &EnsembleSpec::M)
      .def_readonly("beta", &EnsembleSpec::beta)
      .def_readonly("seed", &EnsembleSpec::seed);

  py::class_<EnsembleSample>(m, "EnsembleSample")
      .def_readonly("components", &EnsembleSample::components)
      .def_readonly("defects", &EnsembleSample::defects)
      .def_readonly("realized_T", &EnsembleSample::realized_T)
      .def_readonly("realized_I", &EnsembleSample::realized_I);

  m.def("partition_function", [](double beta, const std::vector<std::int64_t>& values) {
        return partition_function(beta, values);
      }, py::arg("beta"), py::arg("alphabet_values"));
  m.def("sample_powerlaw", &sample_powerlaw, py::arg("spec"));
  m.def("inject_defects", &inject_defects, py::arg("sample"), py::arg("defect_rate"),
        py::arg("seed"));
  m.def("rate_for_mean_defects", &rate_for_mean_defects, py::arg("sample"),
        py::arg("mean_defects"));
  m.def("scatter_defects_uniform", &scatter_defects_uniform, py::arg("sample"),
        py::arg("total_D"), py::arg("seed"));
  m.def("metropolis_equilibrate", [](const EnsembleSample& s, std::int64_t total_D, double beta,
                                     std::uint64_t steps, std::uint64_t seed) {
        py::gil_scoped_release release;
        return metropolis_equilibrate(s, total_D, beta, steps, seed);
      }, py::arg("sample"), py::arg("total_D"), py::arg("beta"), py::arg("steps"),
      py::arg("seed"));

  m.def("defect_law_regression", [](const std::vector<JoinedComponent>& j, std::int64_t d_max,
                                    double normalize) {
        return defect_law_regression(j, d_max, normalize);
      }, py::arg("joined"), py::arg("d_max"), py::arg("normalize") = 1.0);

  py::class_<MaturityReport>(m, "MaturityReport")
      .def_readonly("cutoff_d", &MaturityReport::cutoff_d)
      .def_readonly("d_max", &MaturityReport::d_max)
      .def_readonly("bins_all", &MaturityReport::bins_all)
      .def_readonly("bins_used", &MaturityReport::bins_used)
      .def_readonly("adj_r2_all", &MaturityReport::adj_r2_all)
      .def_readonly("adj_r2_cut", &MaturityReport::adj_r2_cut)
      .def_readonly("p_value", &MaturityReport::p_value)
      .def_property_readonly("verdict",
                             [](const MaturityReport& r) { return std::string(to_string(r.verdict)); })
      .def_readonly("excluded_fraction", &MaturityReport::excluded_fraction)
      .def_readonly("bins", &MaturityReport::bins);

  m.def("maturity_assess", [](const std::vector<JoinedComponent>& j, double fraction,
                              double r2_threshold, double alpha, double normalize,
                              std::optional<std::int64_t> d_max) {
        MaturityOptions o;
        o.fraction = fraction;
        o.r2_threshold = r2_threshold;
        o.alpha = alpha;
        o.normalize = normalize;
        o.d_max = d_max;
        return maturity_assess(j, o);
      }, py::arg("joined"), py::arg("fraction") = 0.95, py::arg("r2_threshold") = 0.9,
      py::arg("alpha") = 0.01, py::arg("normalize") = 1.0, py::arg("d_max") = py::none());

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("beta_hat", &PowerLawFit::beta_hat)
      .def_readonly("fit_r2", &PowerLawFit::fit_r2)
      .def_readonly("n_points", &PowerLawFit::n_points);
  m.def("powerlaw_check", [](const std::vector<ComponentMetrics>& ms, std::size_t n_bins) {
        return powerlaw_check(ms, n_bins);
      }, py::arg("metrics"), py::arg("n_bins") = 20);
}
