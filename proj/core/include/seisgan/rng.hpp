#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace seisgan {

// Deterministic random source. All distribution transforms are implemented
// here (not via std:: distributions) so that a given seed produces the same
// stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in log space; requires 0 < lo <= hi.
  double log_uniform(double lo, double hi);

  // Inclusive integer range, rejection sampled (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Standard normal via Box-Muller. Two raw draws per sample.
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::string save() const;
  void restore(const std::string& state);

 private:
  std::mt19937_64 gen_;
};

// Splits one seed into independent stream seeds (SplitMix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace seisgan
