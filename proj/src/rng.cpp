#include "qamlab/rng.hpp"

#include <cmath>

#include "qamlab/errors.hpp"

namespace qamlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::log_uniform(double lo, double hi) {
  if (!(lo > 0.0) || !(lo <= hi)) throw ParameterError("log_uniform needs 0 < lo <= hi");
  if (lo == hi) return lo;
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  // Box-Muller; one draw per call keeps the stream position simple to reason about.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace qamlab
