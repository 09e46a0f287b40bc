#include "memeflow/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "memeflow/errors.hpp"

namespace memeflow {

const char* to_string(FeatureLabel label) {
  switch (label) {
    case FeatureLabel::Redundant: return "Redundant";
    case FeatureLabel::Meaningful: return "Meaningful";
    case FeatureLabel::Random: return "Random";
  }
  return "?";
}

double column_entropy(const std::vector<double>& values, int bins) {
  if (bins < 2) throw ValidationError("column_entropy requires bins >= 2");
  if (values.empty()) throw ValidationError("column_entropy on an empty column");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("column_entropy on a non-finite value");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return 0.0;  // single occupied bin

  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  const double width = hi - lo;
  for (double v : values) {
    auto idx = static_cast<long>(std::floor((v - lo) / width * bins));
    idx = std::clamp<long>(idx, 0, bins - 1);
    ++counts[static_cast<std::size_t>(idx)];
  }

  const double n = static_cast<double>(values.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  // exact arithmetic keeps h in [0, log2(bins)]; clip the rounding dust
  return std::clamp(h, 0.0, std::log2(static_cast<double>(bins)));
}

std::vector<FeatureScore> triage(const Dataset& data, int bins, double low, double high) {
  if (!(low >= 0.0 && low < high && high <= 1.0))
    throw ValidationError("triage thresholds must satisfy 0 <= low < high <= 1");

  std::vector<FeatureScore> scores;
  scores.reserve(data.columns.size());
  const double hmax = std::log2(static_cast<double>(bins));
  for (const auto& col : data.columns) {
    double h;
    try {
      h = column_entropy(col.values, bins);
    } catch (const Error& e) {
      throw ValidationError("column '" + col.name + "': " + e.what());
    }
    FeatureScore s;
    s.name = col.name;
    s.entropy_bits = h;
    s.normalized = h / hmax;
    if (s.normalized <= low)
      s.label = FeatureLabel::Redundant;
    else if (s.normalized >= high)
      s.label = FeatureLabel::Random;
    else
      s.label = FeatureLabel::Meaningful;
    scores.push_back(std::move(s));
  }
  return scores;
}

}  // namespace memeflow
