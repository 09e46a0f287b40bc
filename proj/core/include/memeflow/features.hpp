#pragma once

#include <string>
#include <vector>

namespace memeflow {

struct Column {
  std::string name;
  std::vector<double> values;
};

struct Dataset {
  std::vector<Column> columns;
  std::size_t rows_dropped = 0;  // rows discarded at ingestion for missing cells
};

enum class FeatureLabel { Redundant, Meaningful, Random };

const char* to_string(FeatureLabel label);

struct FeatureScore {
  std::string name;
  double entropy_bits = 0.0;
  double normalized = 0.0;  // entropy / log2(bins)
  FeatureLabel label = FeatureLabel::Meaningful;
};

/// Shannon entropy (bits) of the equal-width histogram of `values` over
/// [min, max]. A constant column has a single occupied bin and yields exactly
/// 0. Result is always within [0, log2(bins)].
double column_entropy(const std::vector<double>& values, int bins);

/// Scores each column and labels it Redundant (normalized entropy <= low),
/// Random (>= high) or Meaningful. Requires 0 <= low < high <= 1. Output
/// order matches input column order.
std::vector<FeatureScore> triage(const Dataset& data, int bins, double low, double high);

}  // namespace memeflow
