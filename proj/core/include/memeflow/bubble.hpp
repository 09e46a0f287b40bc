#pragma once

#include <optional>
#include <string>

#include "memeflow/fitting.hpp"
#include "memeflow/timeseries.hpp"

namespace memeflow {

struct BubbleConfig {
  double disparity_threshold = 0.15;  // relative forecast error that raises suspicion
  double aic_margin = 2.0;            // how decisively exponential must beat logistic
  double inflection_window_fraction = 1.0;  // leading fraction of samples inspected

  void validate() const;
};

enum class BubbleLabel { Stable, Bubble, Indeterminate };
enum class StabilityLabel { Sustained, Collapsing, Watch };

const char* to_string(BubbleLabel label);
const char* to_string(StabilityLabel label);

struct InflectionPoint {
  double t = 0.0;
  double y = 0.0;
};

struct BubbleVerdict {
  BubbleLabel label = BubbleLabel::Indeterminate;
  std::optional<InflectionPoint> inflection;
  std::optional<FitReport> logistic_fit;
  std::optional<FitReport> exponential_fit;
  double disparity = 0.0;  // max relative logistic-forecast error, final quartile
  std::string rationale;
};

struct StabilityReport {
  StabilityLabel label = StabilityLabel::Watch;
  double max_deviation = 0.0;    // |observed - fitted| over the post-inflection window
  double tail_slope = 0.0;       // least-squares slope of the post-inflection samples
  double inflection_time = 0.0;  // where the fitted curve crosses half amplitude
  std::size_t post_inflection_count = 0;
};

/// First sign change of the centered second difference of y over t, linearly
/// interpolated; absent when the curvature never flips (pure exponential or
/// linear data). Requires >= 5 samples. Stays independent of the fitting
/// route: two separate lines of evidence.
std::optional<InflectionPoint> detect_inflection(const TimeSeries& series);

/// Runs both fits and applies the verdict rules:
///   Stable  -- inflection present and logistic AIC <= exponential AIC
///   Bubble  -- exponential AIC + margin < logistic AIC, or forecast
///              disparity above threshold with no inflection
/// anything else (including fit errors) is Indeterminate with a rationale.
BubbleVerdict classify(const TimeSeries& series, const BubbleConfig& cfg = {});

/// Over the post-inflection samples: Sustained if every observation stays
/// within sustain_band * delta_e of the fitted curve; Collapsing if the tail's
/// least-squares slope drops below -sustain_band * delta_e per unit time;
/// otherwise Watch. Requires a converged logistic fit and at least one
/// post-inflection sample.
StabilityReport stability_check(const TimeSeries& series, const FitReport& fitted,
                                double sustain_band);

}  // namespace memeflow
