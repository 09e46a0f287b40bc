#pragma once

#include <optional>
#include <vector>

#include "memeflow/timeseries.hpp"

namespace memeflow {

enum class FitModel { Logistic, Exponential };

const char* to_string(FitModel model);

// Identifiability bound on the fitted upper asymptote: delta_e is capped at
// this factor times the largest observed amplitude. Without it the logistic
// family has an unbounded-delta_e ridge on exponential-like data (the curve
// degenerates to y0 * exp(A t)) and the fitted amplitude stops meaning
// anything.
inline constexpr double kAmplitudeCapFactor = 5.0;

struct FitReport {
  FitModel model = FitModel::Logistic;
  double affinity = 0.0;
  std::optional<double> delta_e;  // logistic only
  double y0 = 0.0;
  double sse = 0.0;
  double aic = 0.0;
  bool perfect_fit = false;  // sse == 0 exactly; aic is -infinity
  std::vector<double> residuals;  // observed - predicted, aligned to samples
  bool converged = false;
  int iterations = 0;
};

struct Goodness {
  double sse = 0.0;
  double aic = 0.0;
  bool perfect_fit = false;
};

/// Least-squares fit of the bounded growth curve by damped (Levenberg style)
/// iteration with analytic partials, seeded deterministically:
/// delta_e0 = 1.05 * max y, affinity0 from the log-slope of the early
/// samples, y0_0 = first sample. Converged means relative SSE improvement
/// < 1e-10 or parameter step < 1e-8 within 500 iterations.
FitReport fit_logistic(const TimeSeries& series);

/// Linear least squares on ln y vs t; exact on noiseless exponential data.
/// Residuals (and sse/aic) are reported in y space so the two models are
/// comparable.
FitReport fit_exponential(const TimeSeries& series);

/// sse = sum of squared residuals of the report's curve against the series;
/// aic = n ln(sse/n) + 2k with k = 3 (logistic) or 2 (exponential). A perfect
/// fit (sse == 0) sets the flag and reports aic = -infinity.
Goodness goodness(const TimeSeries& series, const FitReport& report);

}  // namespace memeflow
