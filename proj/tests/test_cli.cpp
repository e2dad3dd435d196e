#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "defectlaw/analysis.hpp"
#include "defectlaw/cli.hpp"
#include "defectlaw/csv.hpp"
#include "defectlaw/metrics.hpp"

using namespace defectlaw;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("defectlaw_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << content;
}

std::string slurp(const fs::path& p) { return csv::read_file(p); }

} // namespace

TEST_CASE("pvalue subcommand") {
  CHECK(run({"pvalue", "f", "59.03", "1", "6"}).out == "0.0002544\n");
  // 130.8 is itself rounded, so the tail is 1.904e-07 rather than the reference 1.907e-07
  const auto small = run({"pvalue", "f", "130.8", "1", "11"}).out;
  CHECK(small == "1.904e-07\n");
  CHECK(std::abs(std::stod(small) / 1.907e-07 - 1.0) < 0.01);
  CHECK(run({"pvalue", "t", "0", "6"}).out == "1.000\n");
  CHECK(run({"pvalue", "t", "7.683", "6"}).out == "0.0002545\n");
  const auto bad = run({"pvalue", "f", "-1", "1", "6"});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("error:") != std::string::npos);
  CHECK(run({"pvalue", "t", "1", "1", "2"}).code != 0);
  CHECK(run({"pvalue", "z", "1", "1"}).code != 0);
}

TEST_CASE("scan a small tree") {
  const auto dir = fresh_dir("scan_src");
  write(dir / "a.c", "int a(void) { return 1; }\n");
  write(dir / "sub/b.h", "#define B 2\n");
  write(dir / "sub/c.cpp", "int c() { int x = 3; return x * x; }\n");
  write(dir / "notes.txt", "ignored");
  const auto out = fresh_dir("scan_out");
  const auto r = run({"scan", dir.string(), "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("M = 3\n"));
  const auto ms = load_metrics(out / "metrics.csv");
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].id == "a.c");
  CHECK(ms[1].id == "sub/b.h");

  const auto fn = run({"scan", dir.string(), "--granularity", "function", "-o", out.string()});
  CHECK(fn.code == 0);
  CHECK(load_metrics(out / "metrics.csv").size() == 3);

  const auto plain = run({"scan", dir.string(), "--language", "plain", "-o", out.string()});
  CHECK(plain.code == 0);
  // the override changes the lexer, not which files are scanned
  CHECK(plain.out.starts_with("M = 3\n"));
}

TEST_CASE("scan failures") {
  const auto empty = fresh_dir("scan_empty");
  const auto r = run({"scan", empty.string(), "-o", fresh_dir("scan_empty_out").string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("no components") != std::string::npos);

  const auto missing = run({"scan", (empty / "nope").string()});
  CHECK(missing.code != 0);

  const auto dir = fresh_dir("scan_bad");
  write(dir / "ok.c", "int x;\n");
  write(dir / "bad.c", "int y; /* never closed\n");
  const auto out = fresh_dir("scan_bad_out");
  const auto b = run({"scan", dir.string(), "-o", out.string()});
  CHECK(b.code == 0);
  CHECK(b.err.find("bad.c") != std::string::npos);
  CHECK(load_metrics(out / "metrics.csv").size() == 1);
}

TEST_CASE("simulate is deterministic") {
  const auto a = fresh_dir("sim_a"), b = fresh_dir("sim_b");
  const std::vector<std::string> common = {"simulate", "--M", "10000", "--beta", "2", "--seed", "7",
                                           "--mean-defects", "2"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"-o", a.string()});
  args_b.insert(args_b.end(), {"-o", b.string()});
  const auto ra = run(args_a), rb = run(args_b);
  CHECK(ra.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(ra.out.find("D = ") != std::string::npos);
  CHECK(slurp(a / "metrics.csv") == slurp(b / "metrics.csv"));
  CHECK(slurp(a / "defects.csv") == slurp(b / "defects.csv"));
}

TEST_CASE("simulate with zero rate writes zero defects") {
  const auto dir = fresh_dir("sim_zero");
  CHECK(run({"simulate", "--M", "200", "--defect-rate", "0", "-o", dir.string()}).code == 0);
  for (const auto& r : load_defects(dir / "defects.csv")) CHECK(r.d == 0);
}

TEST_CASE("simulate defect models") {
  const auto dir = fresh_dir("sim_models");
  auto r = run({"simulate", "--M", "50", "--defect-model", "uniform", "--total-defects", "80", "-o",
                dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("D = 80\n") != std::string::npos);
  r = run({"simulate", "--M", "50", "--defect-model", "metropolis", "--total-defects", "30",
           "--steps", "10000", "-o", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("D = 30\n") != std::string::npos);
  CHECK(run({"simulate", "--beta", "-1", "-o", dir.string()}).code != 0);
  CHECK(run({"simulate", "--a-min", "1", "-o", dir.string()}).code != 0);
  CHECK(run({"simulate", "--defect-rate", "1", "--mean-defects", "2", "-o", dir.string()}).code != 0);
}

TEST_CASE("simulate then analyze") {
  const auto sim = fresh_dir("pipe_sim");
  REQUIRE(run({"simulate", "--M", "20000", "--seed", "3", "--mean-defects", "2", "-o",
               sim.string()}).code == 0);
  const auto out = fresh_dir("pipe_out");
  const auto r = run({"analyze", (sim / "metrics.csv").string(), (sim / "defects.csv").string(),
                      "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("verdict:           equilibrated\n"));
  for (const char* f : {"bins.csv", "regression.txt", "maturity.txt", "report.json",
                        "plot_all.svg", "plot_cut.svg"})
    CHECK(fs::exists(out / f));
  CHECK(slurp(out / "bins.csv").starts_with("d,n,mean_info\n"));
  CHECK(slurp(out / "regression.txt").find("Adjusted R-squared") != std::string::npos);
  CHECK(slurp(out / "plot_cut.svg").find("class=\"fit\"") != std::string::npos);

  const auto again = fresh_dir("pipe_out2");
  run({"analyze", (sim / "metrics.csv").string(), (sim / "defects.csv").string(), "-o",
       again.string()});
  CHECK(slurp(out / "report.json") == slurp(again / "report.json"));
}

TEST_CASE("analyze failures and edge cases") {
  const auto dir = fresh_dir("an_edge");
  write(dir / "metrics.csv", "id,t,a,info\na,4,4,5.545177\nb,3,1,0\nc,10,5,16.0944\n");
  write(dir / "orphans.csv", "component_id,defects\nzz,1\n");
  auto r = run({"analyze", (dir / "metrics.csv").string(), (dir / "orphans.csv").string(), "-o",
                dir.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("zz") != std::string::npos);

  write(dir / "few.csv", "component_id,defects\na,1\nc,1\nzz,2\n");
  r = run({"analyze", (dir / "metrics.csv").string(), (dir / "few.csv").string(), "-o",
           dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("verdict:           insufficient-data\n"));
  CHECK(r.err.find("warning:") != std::string::npos);

  write(dir / "neg.csv", "component_id,defects\na,1\nb,-2\n");
  r = run({"analyze", (dir / "metrics.csv").string(), (dir / "neg.csv").string(), "-o",
           dir.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("row 3") != std::string::npos);

  write(dir / "badmetrics.csv", "id,t,a,info\na,4,x,5.5\n");
  r = run({"analyze", (dir / "badmetrics.csv").string(), (dir / "few.csv").string(), "-o",
           dir.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("'a'") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code != 0);
  CHECK(run({"frobnicate"}).code != 0);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}
