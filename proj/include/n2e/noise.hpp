#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace n2e {

// Seeded randomness for the DP mechanisms. Draw order is part of every
// mechanism's contract: a mechanism documents the exact sequence of Laplace
// draws it makes, and all draws happen on the coordinator thread before any
// parallel work starts. Identical seed => identical draw sequence,
// independent of the worker budget.
class NoiseSource {
public:
  virtual ~NoiseSource() = default;

  // One Laplace draw with the given scale; consumes exactly one uniform.
  // Sampled by inverse CDF: x = -b * sgn(u - 1/2) * ln(1 - 2|u - 1/2|).
  double laplace(double scale);

  std::int64_t draws() const { return draws_; }

protected:
  // Uniform on (0,1); implementations must never return exactly 0 or 1 so
  // the inverse CDF stays finite.
  virtual double uniform() = 0;

private:
  std::int64_t draws_ = 0;
};

// mt19937_64-backed source.
class SeededNoise final : public NoiseSource {
public:
  explicit SeededNoise(std::uint64_t seed) : rng_(seed) {}

protected:
  double uniform() override;

private:
  std::mt19937_64 rng_;
};

// Every uniform is 1/2, so every Laplace draw is exactly 0. Used to freeze
// deterministic traces in tests.
class ZeroNoise final : public NoiseSource {
protected:
  double uniform() override { return 0.5; }
};

// Stable per-task seed derivation (splitmix64 over the pair), so concurrent
// rounds/trials get independent streams from one experiment seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace n2e
