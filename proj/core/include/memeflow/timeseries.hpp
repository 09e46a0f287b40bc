#pragma once

#include <cstddef>
#include <vector>

namespace memeflow {

struct Sample {
  double t;
  double y;
};

/// Ordered (t, y) samples with strictly increasing t. The common currency
/// between simulation, fitting and detection.
struct TimeSeries {
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  // Throws ValidationError if t is not strictly increasing or any value is
  // non-finite.
  void validate() const;
};

}  // namespace memeflow
