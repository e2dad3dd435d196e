#pragma once

// Synthetic component populations drawn from the constrained-ensemble
// distributions: alphabet sizes follow P(a) = a^-beta / Q(beta) on
// [a_min, a_max], token counts follow from a, and defects are either injected
// around the mean law d ~ rate * t ln a or equilibrated by a Metropolis walk
// that conserves the total defect count exactly.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "defectlaw/defects.hpp"
#include "defectlaw/metrics.hpp"

namespace defectlaw {

// Maps a sampled alphabet size a to a token count t >= a.
//   proportional  t = max(a, round(scale * a))
//   uniform       t uniform on the integers [a, max(a, round(scale * a))]
struct TokenRule {
  enum class Kind { proportional, uniform };
  Kind kind = Kind::proportional;
  double scale = 4.0;
};

std::optional<TokenRule::Kind> parse_token_rule(std::string_view name);

struct EnsembleSpec {
  std::size_t M = 1000;
  double beta = 2.0;
  std::int64_t a_min = 2;
  std::int64_t a_max = 1024;
  TokenRule t_of_a;
  double defect_rate = 0.0;  // expected defects per unit of t ln a
  std::uint64_t seed = 1;

  // DomainError unless 2 <= a_min <= a_max, M >= 1, beta > 0,
  // defect_rate >= 0 and scale >= 1.
  void validate() const;
};

struct EnsembleSample {
  std::vector<ComponentMetrics> components;
  std::vector<DefectRecord> defects;  // one record per component, same order
  std::int64_t realized_T = 0;
  double realized_I = 0.0;
};

// Q(beta) = sum of a^-beta. Error on an empty list, DomainError for a < 1.
double partition_function(double beta, std::span<const std::int64_t> alphabet_values);

// Draws M alphabet sizes by inverse CDF over the explicit table
// a_min..a_max, assigns t by the token rule, then injects defects at
// spec.defect_rate. Deterministic in spec.seed.
EnsembleSample sample_powerlaw(const EnsembleSpec& spec);

// d_i ~ Poisson(rate * info_i).
std::vector<DefectRecord> inject_defects(const EnsembleSample& sample, double defect_rate,
                                         std::uint64_t seed);

// Rate for which the expected mean defect count equals `mean_defects`.
double rate_for_mean_defects(const EnsembleSample& sample, double mean_defects);

// Null model: each of total_D defects lands on a uniformly chosen component,
// irrespective of size.
std::vector<DefectRecord> scatter_defects_uniform(const EnsembleSample& sample,
                                                  std::int64_t total_D, std::uint64_t seed);

// Called after every proposal with the current defect vector.
using MetropolisObserver = std::function<void(std::span<const std::int64_t>)>;

// Metropolis walk over defect assignments with target weight
// prod_i exp(-beta d_i / t_i). Starts from a round-robin placement of total_D
// defects; each step moves one defect between a uniformly chosen ordered pair
// of distinct components. The total is conserved at every step.
std::vector<DefectRecord> metropolis_equilibrate(const EnsembleSample& sample,
                                                 std::int64_t total_D, double beta,
                                                 std::uint64_t steps, std::uint64_t seed,
                                                 const MetropolisObserver& observer = {});

} // namespace defectlaw
