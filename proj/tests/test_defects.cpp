#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "defectlaw/defects.hpp"
#include "defectlaw/error.hpp"

using namespace defectlaw;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("defectlaw_defects_" + name);
  std::ofstream(p) << content;
  return p;
}

ComponentMetrics metric(std::string id, double info) { return {std::move(id), 100, 10, info}; }

// Joined list with `count[d]` components at each level d.
std::vector<JoinedComponent> with_counts(const std::vector<int>& count) {
  std::vector<JoinedComponent> out;
  for (std::size_t d = 0; d < count.size(); ++d)
    for (int k = 0; k < count[d]; ++k)
      out.push_back({metric("c", 10.0), static_cast<std::int64_t>(d), 0.0});
  return out;
}

} // namespace

TEST_CASE("load_defects aggregates duplicate ids") {
  auto recs = load_defects(write_temp("dup.csv", "component_id,defects\nx.c,1\nx.c,2\n"));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0] == DefectRecord{"x.c", 3});

  recs = load_defects(write_temp("zero.csv", "component_id,defects\na.c,0\n"));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0] == DefectRecord{"a.c", 0});
}

TEST_CASE("load_defects reports the offending row") {
  try {
    load_defects(write_temp("neg.csv", "component_id,defects\na.c,1\nb.c,-1\n"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.row() == 3);
  }
  CHECK_THROWS_AS(load_defects(write_temp("bad.csv", "component_id,defects\na.c,x\n")), DataError);
  CHECK_THROWS_AS(load_defects(write_temp("hdr.csv", "id,defects\n")), DataError);
  CHECK_THROWS_AS(load_defects(fs::temp_directory_path() / "defectlaw_missing.csv"), Error);
}

TEST_CASE("defects CSV round trip") {
  const std::vector<DefectRecord> recs = {{"a.c", 2}, {"b,c", 0}};
  const auto back = load_defects(write_temp("rt.csv", format_defects_csv(recs)));
  CHECK(back == recs);
}

TEST_CASE("join policies and orphans") {
  const std::vector<ComponentMetrics> ms = {metric("a", 1), metric("b", 2), metric("c", 3)};
  const std::vector<DefectRecord> recs = {{"a", 2}, {"c", 1}};

  auto r = join(ms, recs, MissingPolicy::zero);
  REQUIRE(r.joined.size() == 3);
  CHECK(r.joined[1].metrics.id == "b");
  CHECK(r.joined[1].d == 0);
  CHECK(r.joined[0].density == doctest::Approx(0.02));
  CHECK(r.orphans.empty());

  r = join(ms, recs, MissingPolicy::skip);
  CHECK(r.joined.size() == 2);

  const std::vector<DefectRecord> with_orphan = {{"a", 1}, {"zz", 4}};
  r = join(ms, with_orphan, MissingPolicy::zero);
  CHECK(r.joined.size() == 3);
  REQUIRE(r.orphans.size() == 1);
  CHECK(r.orphans[0] == "zz");
}

TEST_CASE("coverage_cutoff") {
  CHECK(coverage_cutoff(with_counts({95, 3, 2}), 0.95) == 0);
  CHECK(coverage_cutoff(with_counts({60, 20, 15, 5}), 0.95) == 2);
  CHECK(coverage_cutoff(with_counts({60, 20, 15, 5}), 1.0) == 3);
  CHECK(coverage_cutoff(with_counts({0, 0, 4}), 1.0) == 2);
  CHECK_THROWS(coverage_cutoff(std::vector<JoinedComponent>{}, 0.95));
  CHECK_THROWS(coverage_cutoff(with_counts({1}), 0.0));
  CHECK_THROWS(coverage_cutoff(with_counts({1}), 1.5));
}

TEST_CASE("bin_by_defects") {
  std::vector<JoinedComponent> j = {{metric("a", 4000), 1, 0}, {metric("b", 6000), 1, 0}};
  auto bins = bin_by_defects(j, 7, 5000.0);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].d == 1);
  CHECK(bins[0].n == 2);
  CHECK(bins[0].mean_info == doctest::Approx(1.0).epsilon(1e-15));

  bins = bin_by_defects(j, 7);
  CHECK(bins[0].mean_info == 5000.0);

  // eight occupied levels up to a cap of 7
  std::vector<JoinedComponent> all;
  for (int d = 0; d <= 9; ++d) all.push_back({metric("x", 10.0 + d), d, 0});
  bins = bin_by_defects(all, 7);
  REQUIRE(bins.size() == 8);
  for (std::size_t k = 0; k < bins.size(); ++k) CHECK(bins[k].d == static_cast<std::int64_t>(k));

  // empty levels emit no bin
  bins = bin_by_defects(with_counts({2, 0, 3}), 5);
  CHECK(bins.size() == 2);

  CHECK_THROWS_AS(bin_by_defects(with_counts({0, 0, 3}), 1), InsufficientDataError);
  CHECK_THROWS(bin_by_defects(j, -1));
  CHECK_THROWS(bin_by_defects(j, 3, 0.0));
}

TEST_CASE("bins CSV layout") {
  const std::vector<DefectBin> bins = {{0, 3, 12.5}, {2, 1, 1.0 / 3.0}};
  CHECK(format_bins_csv(bins) == "d,n,mean_info\n0,3,12.5\n2,1,0.3333333333\n");
}

TEST_CASE("binning properties on random data") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<JoinedComponent> j;
    const int n = 1 + static_cast<int>(gen() % 200);
    for (int i = 0; i < n; ++i) {
      const double info = 1.0 + static_cast<double>(gen() % 100000) / 7.0;
      j.push_back({metric("c" + std::to_string(i), info), static_cast<std::int64_t>(gen() % 12), 0});
    }
    const std::int64_t cap = static_cast<std::int64_t>(gen() % 12);
    std::size_t excluded = 0;
    for (const auto& c : j) excluded += c.d > cap ? 1 : 0;
    if (excluded == j.size()) continue;

    // conservation of components
    const auto bins = bin_by_defects(j, cap);
    std::size_t total = 0;
    for (const auto& b : bins) {
      CHECK(b.n >= 1);
      CHECK(b.mean_info > 0.0);
      total += b.n;
    }
    CHECK(total + excluded == j.size());

    // normalization scales x only
    const double c = 1.0 + static_cast<double>(gen() % 9999);
    const auto scaled = bin_by_defects(j, cap, c);
    REQUIRE(scaled.size() == bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
      CHECK(scaled[k].d == bins[k].d);
      CHECK(scaled[k].n == bins[k].n);
      CHECK(scaled[k].mean_info == doctest::Approx(bins[k].mean_info / c).epsilon(1e-14));
    }

    // cutoff monotone in fraction
    std::int64_t prev = -1;
    for (double f = 0.05; f <= 1.0 + 1e-12; f += 0.05) {
      const auto d = coverage_cutoff(j, std::min(f, 1.0));
      CHECK(d >= prev);
      prev = d;
    }
  }
}
