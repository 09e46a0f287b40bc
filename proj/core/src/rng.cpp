#include "memeflow/rng.hpp"

#include <cmath>
#include <numbers>

#include "memeflow/errors.hpp"

namespace memeflow {

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double SeededRng::positive_normal(double mean, double sigma) {
  for (;;) {
    const double v = mean + sigma * normal();
    if (v > 0.0) return v;
  }
}

TimeSeries with_noise(const TimeSeries& series, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ValidationError("noise sigma must be non-negative");
  if (sigma == 0.0) return series;
  SeededRng rng(seed);
  TimeSeries out = series;
  for (auto& s : out.samples) s.y = rng.positive_normal(s.y, sigma);
  return out;
}

}  // namespace memeflow
