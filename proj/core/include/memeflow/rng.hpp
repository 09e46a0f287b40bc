#pragma once

#include <cstdint>
#include <random>

#include "memeflow/timeseries.hpp"

namespace memeflow {

/// Deterministic random stream: std::mt19937_64 with fixed mappings so that
/// identical seeds give identical outputs on every platform.
///  - uniform():  (x >> 11) * 2^-53, in [0, 1)
///  - normal():   Box-Muller on (1 - u1, u2], with the sine mate cached
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal();

  /// mean + sigma * z, resampled until strictly positive. Keeps noisy
  /// synthetic amplitudes in the models' positive domain.
  double positive_normal(double mean, double sigma);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Adds seeded Gaussian noise (truncated to keep every sample positive) to a
/// trajectory. Identical (series, sigma, seed) gives identical output.
TimeSeries with_noise(const TimeSeries& series, double sigma, std::uint64_t seed);

}  // namespace memeflow
