#include "defectlaw/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "defectlaw/error.hpp"
#include "defectlaw/random.hpp"

namespace defectlaw {

namespace {

constexpr std::uint64_t kDefectStream = 1;

std::string component_id(std::size_t index, std::size_t count) {
  const auto width = fmt::format("{}", count).size();
  return fmt::format("c{:0{}}", index, width);
}

void check_components(const EnsembleSample& sample) {
  for (const auto& c : sample.components)
    if (c.t < 1) throw DomainError("component '" + c.id + "' has no tokens");
}

} // namespace

std::optional<TokenRule::Kind> parse_token_rule(std::string_view name) {
  if (name == "proportional") return TokenRule::Kind::proportional;
  if (name == "uniform") return TokenRule::Kind::uniform;
  return std::nullopt;
}

void EnsembleSpec::validate() const {
  if (M < 1) throw DomainError("ensemble: M must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("ensemble: beta must be > 0");
  if (a_min < 2 || a_min > a_max) throw DomainError("ensemble: need 2 <= a_min <= a_max");
  if (!(defect_rate >= 0.0) || !std::isfinite(defect_rate))
    throw DomainError("ensemble: defect_rate must be >= 0");
  if (!(t_of_a.scale >= 1.0) || !std::isfinite(t_of_a.scale))
    throw DomainError("ensemble: token scale must be >= 1");
}

double partition_function(double beta, std::span<const std::int64_t> alphabet_values) {
  if (alphabet_values.empty()) throw Error("partition_function: no alphabet values");
  double q = 0.0;
  for (const std::int64_t a : alphabet_values) {
    if (a < 1) throw DomainError("partition_function: alphabet sizes must be >= 1");
    q += std::pow(static_cast<double>(a), -beta);
  }
  return q;
}

EnsembleSample sample_powerlaw(const EnsembleSpec& spec) {
  spec.validate();
  const auto span = static_cast<std::size_t>(spec.a_max - spec.a_min + 1);
  std::vector<double> cdf(span);
  double running = 0.0;
  for (std::size_t k = 0; k < span; ++k) {
    running += std::pow(static_cast<double>(spec.a_min + static_cast<std::int64_t>(k)), -spec.beta);
    cdf[k] = running;
  }
  for (double& c : cdf) c /= running;
  cdf.back() = 1.0;

  Rng rng(spec.seed);
  EnsembleSample sample;
  sample.components.reserve(spec.M);
  for (std::size_t i = 0; i < spec.M; ++i) {
    const double u = rng.uniform();
    const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const std::int64_t a = spec.a_min + static_cast<std::int64_t>(std::min(k, span - 1));
    const std::int64_t t_hi = std::max<std::int64_t>(a, std::llround(spec.t_of_a.scale * static_cast<double>(a)));
    std::int64_t t = t_hi;
    if (spec.t_of_a.kind == TokenRule::Kind::uniform)
      t = a + static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(t_hi - a + 1)));
    ComponentMetrics m{component_id(i, spec.M), t, a, information_content(t, a)};
    sample.realized_T += m.t;
    sample.realized_I += m.info;
    sample.components.push_back(std::move(m));
  }
  sample.defects = inject_defects(sample, spec.defect_rate, mix_seed(spec.seed, kDefectStream));
  return sample;
}

std::vector<DefectRecord> inject_defects(const EnsembleSample& sample, double defect_rate,
                                         std::uint64_t seed) {
  if (!(defect_rate >= 0.0) || !std::isfinite(defect_rate))
    throw DomainError("inject_defects: rate must be >= 0");
  Rng rng(seed);
  std::vector<DefectRecord> out;
  out.reserve(sample.components.size());
  for (const auto& c : sample.components)
    out.push_back(DefectRecord{c.id, rng.poisson(defect_rate * c.info)});
  return out;
}

double rate_for_mean_defects(const EnsembleSample& sample, double mean_defects) {
  if (!(mean_defects >= 0.0)) throw DomainError("mean defect count must be >= 0");
  if (!(sample.realized_I > 0.0))
    throw DomainError("sample carries no information content to scale defects by");
  return mean_defects * static_cast<double>(sample.components.size()) / sample.realized_I;
}

std::vector<DefectRecord> scatter_defects_uniform(const EnsembleSample& sample,
                                                  std::int64_t total_D, std::uint64_t seed) {
  if (total_D < 0) throw DomainError("scatter_defects_uniform: total_D must be >= 0");
  if (sample.components.empty()) throw DomainError("scatter_defects_uniform: no components");
  Rng rng(seed);
  std::vector<std::int64_t> d(sample.components.size(), 0);
  for (std::int64_t k = 0; k < total_D; ++k) ++d[rng.uniform_int(d.size())];
  std::vector<DefectRecord> out;
  out.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    out.push_back(DefectRecord{sample.components[i].id, d[i]});
  return out;
}

std::vector<DefectRecord> metropolis_equilibrate(const EnsembleSample& sample,
                                                 std::int64_t total_D, double beta,
                                                 std::uint64_t steps, std::uint64_t seed,
                                                 const MetropolisObserver& observer) {
  if (total_D < 0) throw DomainError("metropolis_equilibrate: total_D must be >= 0");
  if (!std::isfinite(beta)) throw DomainError("metropolis_equilibrate: beta must be finite");
  const std::size_t m = sample.components.size();
  if (m == 0) throw DomainError("metropolis_equilibrate: no components");
  check_components(sample);

  std::vector<std::int64_t> d(m, 0);
  for (std::int64_t k = 0; k < total_D; ++k) ++d[static_cast<std::size_t>(k) % m];
  std::vector<double> inv_t(m);
  for (std::size_t i = 0; i < m; ++i) inv_t[i] = 1.0 / static_cast<double>(sample.components[i].t);

  Rng rng(seed);
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (m > 1) {
      const std::size_t from = rng.uniform_int(m);
      std::size_t to = rng.uniform_int(m - 1);
      if (to >= from) ++to;
      const double u = rng.uniform();
      if (d[from] > 0) {
        // log weight change of moving one defect from `from` to `to`
        const double log_ratio = -beta * (inv_t[to] - inv_t[from]);
        if (log_ratio >= 0.0 || u < std::exp(log_ratio)) {
          --d[from];
          ++d[to];
        }
      }
    }
    if (observer) observer(d);
  }

  std::vector<DefectRecord> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(DefectRecord{sample.components[i].id, d[i]});
  return out;
}

} // namespace defectlaw
