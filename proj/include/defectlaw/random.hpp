#pragma once

// Reproducible random numbers. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the derived distributions are
// implemented here rather than taken from <random>, whose algorithms vary
// between standard libraries.
//
//   uniform()        (next() >> 11) * 2^-53, in [0, 1)
//   uniform_int(n)   rejection of the biased low range, then modulo
//   poisson(mean)    multiplication method below mean 10, otherwise
//                    Hormann's transformed rejection (PTRS)

#include <cstdint>
#include <random>

namespace defectlaw {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  // Uniform on [0, n). n must be positive.
  std::uint64_t uniform_int(std::uint64_t n);
  std::int64_t poisson(double mean);

private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser, used to derive independent sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace defectlaw
