#include "seisgan/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "seisgan/errors.hpp"

namespace seisgan {

double Rng::log_uniform(double lo, double hi) {
  if (!(lo > 0.0) || hi < lo) {
    throw ParamError("log_uniform requires 0 < lo <= hi, got [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw ParamError("uniform_int requires lo <= hi");
  }
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) {  // full 64-bit span
    return static_cast<std::int64_t>(gen_());
  }
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v = gen_();
  while (v >= limit) {
    v = gen_();
  }
  return lo + static_cast<std::int64_t>(v % range);
}

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string Rng::save() const {
  std::ostringstream out;
  out << gen_;
  return out.str();
}

void Rng::restore(const std::string& state) {
  std::istringstream in(state);
  in >> gen_;
  if (in.fail()) {
    throw DataError("invalid rng state string");
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace seisgan
