#include "n2e/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace n2e {

double NoiseSource::laplace(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("laplace: scale must be > 0");
  const double u = uniform();
  ++draws_;
  const double t = u - 0.5;
  const double s = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return -scale * s * std::log1p(-2.0 * std::abs(t));
}

double SeededNoise::uniform() {
  // 53-bit mantissa draw in [0,1); reject 0 to keep ln(.) finite.
  for (;;) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    if (u != 0.0) return u;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace n2e
