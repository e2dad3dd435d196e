#include "defectlaw/cli.hpp"

#include <cmath>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "defectlaw/csv.hpp"
#include "defectlaw/defects.hpp"
#include "defectlaw/error.hpp"
#include "defectlaw/metrics.hpp"
#include "defectlaw/random.hpp"
#include "defectlaw/report.hpp"
#include "defectlaw/scan.hpp"
#include "defectlaw/simulator.hpp"
#include "defectlaw/stats.hpp"

namespace defectlaw {

namespace fs = std::filesystem;

namespace {

struct ScanArgs {
  std::string source_dir;
  std::string language = "auto";
  std::string granularity = "file";
  std::vector<std::string> extensions;
  unsigned threads = 0;
};

struct AnalyzeArgs {
  std::string metrics_csv;
  std::string defects_csv;
  std::string d_max = "auto";
  std::string missing = "zero";
  double r2_threshold = 0.9;
  double alpha = 0.01;
};

struct SimulateArgs {
  EnsembleSpec spec;
  std::string token_rule = "proportional";
  std::optional<double> mean_defects;
  std::string defect_model = "poisson";
  std::optional<std::int64_t> total_defects;
  double defect_beta = 1.0;
  std::uint64_t steps = 1'000'000;
};

struct PvalueArgs {
  std::string kind;
  double stat = 0.0;
  std::vector<std::int64_t> df;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw Error("cannot create output directory " + dir.string());
}

int cmd_scan(const ScanArgs& a, RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ScanOptions opts;
  if (a.language != "auto") {
    cfg.language = parse_language(a.language);
    if (!cfg.language) throw Error("unknown language '" + a.language + "'");
    opts.language = cfg.language;
  }
  const auto gran = parse_granularity(a.granularity);
  if (!gran) throw Error("unknown granularity '" + a.granularity + "'");
  cfg.granularity = *gran;
  opts.granularity = cfg.granularity;
  opts.threads = a.threads;
  for (const auto& spec : a.extensions) {
    const auto eq = spec.find('=');
    const auto lang = eq == std::string::npos ? std::nullopt : parse_language(spec.substr(eq + 1));
    if (!lang) throw Error("--ext expects EXT=LANGUAGE, got '" + spec + "'");
    opts.extensions.set(spec.substr(0, eq), *lang);
  }

  ScanResult scanned = scan_tree(a.source_dir, opts);
  std::vector<std::string> warnings = std::move(scanned.warnings);
  const auto metrics = measure_all(scanned.components, warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (metrics.empty()) {
    err << "error: no components found under " << a.source_dir << "\n";
    return 1;
  }
  ensure_dir(cfg.output_dir);
  csv::write_file_atomic(cfg.output_dir / "metrics.csv", format_metrics_csv(metrics));
  out << format_system_summary(summarize(metrics));
  return 0;
}

int cmd_analyze(const AnalyzeArgs& a, RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MaturityOptions opts;
  opts.fraction = cfg.fraction;
  opts.normalize = cfg.normalize;
  opts.r2_threshold = a.r2_threshold;
  opts.alpha = a.alpha;
  if (a.d_max != "auto") {
    cfg.d_max = csv::parse_int(a.d_max, 0, "--d-max");
    opts.d_max = cfg.d_max;
  }
  const auto missing = parse_missing_policy(a.missing);
  if (!missing) throw Error("unknown missing policy '" + a.missing + "'");

  const auto metrics = load_metrics(a.metrics_csv);
  const auto records = load_defects(a.defects_csv);
  const JoinResult joined = join(metrics, records, *missing);
  if (!records.empty() && joined.orphans.size() == records.size()) {
    err << "error: none of the " << records.size()
        << " defect records match a component in " << a.metrics_csv << " (e.g. '"
        << joined.orphans.front() << "')\n";
    return 1;
  }
  if (!joined.orphans.empty()) {
    err << "warning: " << joined.orphans.size() << " defect records have no matching component";
    err << " (first: '" << joined.orphans.front() << "')\n";
  }
  if (joined.joined.empty()) {
    err << "error: no components left after joining\n";
    return 1;
  }

  const MaturityReport report = maturity_assess(joined.joined, opts);
  ensure_dir(cfg.output_dir);
  const fs::path dir = cfg.output_dir;
  csv::write_file_atomic(dir / "bins.csv", format_bins_csv(report.bins));

  std::string regression;
  auto block = [&](const char* heading, const std::optional<RegressionSummary>& fit,
                   std::size_t bins) {
    regression += fmt::format("## {}\n\n", heading);
    if (fit) regression += format_lm_summary(*fit);
    else regression += fmt::format("insufficient data: {} usable bins, need 3\n", bins);
    regression += "\n";
  };
  block(fmt::format("all bins, d <= {}", report.d_max).c_str(), report.fit_all, report.bins_all);
  block(fmt::format("bins up to the coverage cutoff, d <= {}", report.cutoff_d).c_str(),
        report.fit_cut, report.bins_used);
  csv::write_file_atomic(dir / "regression.txt", regression);
  csv::write_file_atomic(dir / "maturity.txt", format_maturity(report, opts));
  csv::write_file_atomic(dir / "report.json", to_json(report, opts).dump(2) + "\n");

  std::vector<DefectBin> cut;
  for (const auto& b : report.bins)
    if (b.d <= report.cutoff_d) cut.push_back(b);
  csv::write_file_atomic(
      dir / "plot_all.svg",
      render_bins_svg(report.bins, report.fit_all ? &*report.fit_all : nullptr,
                      fmt::format("defects against t ln(a), d <= {}", report.d_max)));
  csv::write_file_atomic(
      dir / "plot_cut.svg",
      render_bins_svg(cut, report.fit_cut ? &*report.fit_cut : nullptr,
                      fmt::format("defects against t ln(a), d <= {} ({:g}% coverage)",
                                  report.cutoff_d, opts.fraction * 100.0)));
  out << format_maturity(report, opts);
  return 0;
}

int cmd_simulate(SimulateArgs& a, RunConfig& cfg, std::ostream& out) {
  const auto rule = parse_token_rule(a.token_rule);
  if (!rule) throw Error("unknown token rule '" + a.token_rule + "'");
  a.spec.t_of_a.kind = *rule;
  a.spec.seed = cfg.seed;
  const double fixed_rate = a.spec.defect_rate;
  a.spec.defect_rate = 0.0;
  a.spec.validate();
  if (!(fixed_rate >= 0.0)) throw DomainError("--defect-rate must be >= 0");

  EnsembleSample sample = sample_powerlaw(a.spec);
  const std::uint64_t defect_seed = mix_seed(cfg.seed, 1);
  auto total = [&]() -> std::int64_t {
    if (a.total_defects) return *a.total_defects;
    if (a.mean_defects)
      return std::llround(*a.mean_defects * static_cast<double>(sample.components.size()));
    throw Error("--defect-model " + a.defect_model + " needs --total-defects or --mean-defects");
  };
  if (a.defect_model == "poisson") {
    const double rate = a.mean_defects ? rate_for_mean_defects(sample, *a.mean_defects) : fixed_rate;
    sample.defects = inject_defects(sample, rate, defect_seed);
  } else if (a.defect_model == "uniform") {
    sample.defects = scatter_defects_uniform(sample, total(), defect_seed);
  } else if (a.defect_model == "metropolis") {
    sample.defects = metropolis_equilibrate(sample, total(), a.defect_beta, a.steps, defect_seed);
  } else {
    throw Error("unknown defect model '" + a.defect_model + "'");
  }

  std::int64_t D = 0;
  for (const auto& r : sample.defects) D += r.d;
  ensure_dir(cfg.output_dir);
  csv::write_file_atomic(cfg.output_dir / "metrics.csv", format_metrics_csv(sample.components));
  csv::write_file_atomic(cfg.output_dir / "defects.csv", format_defects_csv(sample.defects));
  out << fmt::format("T = {}\nI = {:.6g}\nD = {}\n", sample.realized_T, sample.realized_I, D);
  return 0;
}

int cmd_pvalue(const PvalueArgs& a, std::ostream& out) {
  double p = 0.0;
  if (a.kind == "f") {
    if (a.df.size() != 2) throw Error("pvalue f expects STAT D1 D2");
    p = f_pvalue(a.stat, a.df[0], a.df[1]);
  } else if (a.kind == "t") {
    if (a.df.size() != 1) throw Error("pvalue t expects STAT DF");
    p = t_pvalue_two_sided(a.stat, a.df[0]);
  } else {
    throw Error("pvalue kind must be 'f' or 't'");
  }
  out << fmt::format("{:#.4g}\n", p);
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Token/alphabet metrics, defect-law regression and maturity assessment"};
  app.name("defectlaw");
  app.require_subcommand(1);

  RunConfig cfg;
  ScanArgs scan;
  AnalyzeArgs analyze;
  SimulateArgs sim;
  PvalueArgs pv;

  auto* scan_cmd = app.add_subcommand("scan", "Measure t, a and t ln(a) per component");
  scan_cmd->add_option("source_dir", scan.source_dir, "Directory to scan")->required();
  scan_cmd->add_option("--language", scan.language, "auto, c-like, java-like or plain")
      ->capture_default_str();
  scan_cmd->add_option("--granularity", scan.granularity, "file or function")
      ->capture_default_str();
  scan_cmd->add_option("--ext", scan.extensions, "Extra extension mapping, e.g. .f90=plain");
  scan_cmd->add_option("--threads", scan.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  scan_cmd->add_option("-o,--out", cfg.output_dir, "Output directory")->capture_default_str();

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Join defects, regress d on t ln(a), assess maturity");
  analyze_cmd->add_option("metrics", analyze.metrics_csv, "metrics.csv (id,t,a,info)")
      ->required();
  analyze_cmd->add_option("defects", analyze.defects_csv, "defects.csv (component_id,defects)")
      ->required();
  analyze_cmd->add_option("--fraction", cfg.fraction, "Coverage fraction for the cutoff")
      ->capture_default_str();
  analyze_cmd->add_option("--normalize", cfg.normalize, "Divide mean t ln(a) by this")
      ->capture_default_str();
  analyze_cmd->add_option("--d-max", analyze.d_max, "Defect cap: auto (99% coverage) or an integer")
      ->capture_default_str();
  analyze_cmd->add_option("--missing", analyze.missing, "Components without records: zero or skip")
      ->capture_default_str();
  analyze_cmd->add_option("--r2-threshold", analyze.r2_threshold, "Adjusted R^2 needed")
      ->capture_default_str();
  analyze_cmd->add_option("--alpha", analyze.alpha, "Slope p-value needed")->capture_default_str();
  analyze_cmd->add_option("-o,--out", cfg.output_dir, "Output directory")->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Sample a synthetic system");
  sim_cmd->add_option("--M", sim.spec.M, "Component count")->capture_default_str();
  sim_cmd->add_option("--beta", sim.spec.beta, "Power-law exponent of alphabet sizes")
      ->capture_default_str();
  sim_cmd->add_option("--a-min", sim.spec.a_min, "Smallest alphabet size")->capture_default_str();
  sim_cmd->add_option("--a-max", sim.spec.a_max, "Largest alphabet size")->capture_default_str();
  sim_cmd->add_option("--token-rule", sim.token_rule, "proportional or uniform")
      ->capture_default_str();
  sim_cmd->add_option("--token-scale", sim.spec.t_of_a.scale, "Tokens per alphabet symbol (>= 1)")
      ->capture_default_str();
  sim_cmd->add_option("--defect-model", sim.defect_model, "poisson, uniform or metropolis")
      ->capture_default_str();
  auto* rate_opt = sim_cmd->add_option("--defect-rate", sim.spec.defect_rate,
                                       "Poisson defects per unit t ln(a)")
                       ->capture_default_str();
  sim_cmd->add_option("--mean-defects", sim.mean_defects,
                      "Target mean defects per component (sets the rate or total)")
      ->excludes(rate_opt);
  sim_cmd->add_option("--total-defects", sim.total_defects, "Total defects (uniform, metropolis)");
  sim_cmd->add_option("--defect-beta", sim.defect_beta, "Metropolis inverse temperature")
      ->capture_default_str();
  sim_cmd->add_option("--steps", sim.steps, "Metropolis steps")->capture_default_str();
  sim_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("-o,--out", cfg.output_dir, "Output directory")->capture_default_str();

  auto* pv_cmd = app.add_subcommand("pvalue", "Upper-tail F or two-sided t p-value");
  pv_cmd->add_option("kind", pv.kind, "f or t")->required();
  pv_cmd->add_option("stat", pv.stat, "Test statistic")->required();
  pv_cmd->add_option("df", pv.df, "Degrees of freedom (f: D1 D2, t: DF)")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("defectlaw");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*scan_cmd) return cmd_scan(scan, cfg, out, err);
    if (*analyze_cmd) return cmd_analyze(analyze, cfg, out, err);
    if (*sim_cmd) return cmd_simulate(sim, cfg, out);
    if (*pv_cmd) return cmd_pvalue(pv, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace defectlaw
