#include "memeflow/bubble.hpp"

#include <algorithm>
#include <cmath>

#include "memeflow/dynamics.hpp"
#include "memeflow/errors.hpp"

namespace memeflow {

const char* to_string(BubbleLabel label) {
  switch (label) {
    case BubbleLabel::Stable: return "Stable";
    case BubbleLabel::Bubble: return "Bubble";
    case BubbleLabel::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(StabilityLabel label) {
  switch (label) {
    case StabilityLabel::Sustained: return "Sustained";
    case StabilityLabel::Collapsing: return "Collapsing";
    case StabilityLabel::Watch: return "Watch";
  }
  return "?";
}

void BubbleConfig::validate() const {
  if (!(disparity_threshold > 0.0)) throw ValidationError("disparity_threshold must be > 0");
  if (!(aic_margin > 0.0)) throw ValidationError("aic_margin must be > 0");
  if (!(inflection_window_fraction > 0.0 && inflection_window_fraction <= 1.0))
    throw ValidationError("inflection_window_fraction must lie in (0, 1]");
}

namespace {

std::optional<InflectionPoint> detect_inflection_prefix(const TimeSeries& series,
                                                        std::size_t count) {
  if (count < 5) throw TooFewSamples("detect_inflection requires at least 5 samples");
  const auto& s = series.samples;

  // centered second differences on a possibly non-uniform grid
  std::vector<double> d2(count - 2);
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double left = (s[i].y - s[i - 1].y) / (s[i].t - s[i - 1].t);
    const double right = (s[i + 1].y - s[i].y) / (s[i + 1].t - s[i].t);
    d2[i - 1] = 2.0 * (right - left) / (s[i + 1].t - s[i - 1].t);
  }

  for (std::size_t k = 0; k + 1 < d2.size(); ++k) {
    const double a = d2[k], b = d2[k + 1];
    if (a == 0.0) continue;
    if (b == 0.0) {
      // run of exact zeros: a crossing only if the next nonzero flips sign
      std::size_t j = k + 2;
      while (j < d2.size() && d2[j] == 0.0) ++j;
      if (j < d2.size() && a * d2[j] < 0.0) {
        const auto i = k + 2;  // sample index of the first zero
        return InflectionPoint{s[i].t, s[i].y};
      }
      continue;
    }
    if (a * b < 0.0) {
      const std::size_t i = k + 1;  // d2[k] belongs to sample k+1
      const double frac = a / (a - b);
      const double t = s[i].t + frac * (s[i + 1].t - s[i].t);
      const double y = s[i].y + frac * (s[i + 1].y - s[i].y);
      return InflectionPoint{t, y};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<InflectionPoint> detect_inflection(const TimeSeries& series) {
  series.validate();
  return detect_inflection_prefix(series, series.size());
}

BubbleVerdict classify(const TimeSeries& series, const BubbleConfig& cfg) {
  cfg.validate();
  series.validate();

  BubbleVerdict verdict;
  try {
    verdict.logistic_fit = fit_logistic(series);
    verdict.exponential_fit = fit_exponential(series);
  } catch (const Error& e) {
    verdict.label = BubbleLabel::Indeterminate;
    verdict.rationale = std::string("fit failed: ") + e.what();
    return verdict;
  }

  const std::size_t n = series.size();
  const auto window =
      std::min<std::size_t>(n, static_cast<std::size_t>(
                                   std::ceil(cfg.inflection_window_fraction *
                                             static_cast<double>(n))));
  try {
    verdict.inflection = detect_inflection_prefix(series, std::max<std::size_t>(window, 5));
  } catch (const TooFewSamples&) {
    verdict.inflection = std::nullopt;
  }

  // forecast disparity over the final quartile of samples
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  const LogisticParams fitted{verdict.logistic_fit->affinity,
                              *verdict.logistic_fit->delta_e, verdict.logistic_fit->y0};
  double disparity = 0.0;
  for (std::size_t i = n - q; i < n; ++i) {
    const auto& smp = series.samples[i];
    disparity = std::max(
        disparity, std::abs(logistic_closed_form(smp.t, fitted) - smp.y) / std::abs(smp.y));
  }
  verdict.disparity = disparity;

  const double aic_l = verdict.logistic_fit->aic;
  const double aic_e = verdict.exponential_fit->aic;
  const bool has_inflection = verdict.inflection.has_value();

  if (has_inflection && aic_l <= aic_e) {
    verdict.label = BubbleLabel::Stable;
    verdict.rationale = "inflection present and logistic AIC <= exponential AIC";
  } else if (aic_e + cfg.aic_margin < aic_l) {
    verdict.label = BubbleLabel::Bubble;
    verdict.rationale = "exponential AIC beats logistic AIC beyond the margin";
  } else if (disparity > cfg.disparity_threshold && !has_inflection) {
    verdict.label = BubbleLabel::Bubble;
    verdict.rationale = "forecast disparity above threshold with no inflection";
  } else {
    verdict.label = BubbleLabel::Indeterminate;
    verdict.rationale = "neither the stable nor the bubble rule fired";
  }
  return verdict;
}

StabilityReport stability_check(const TimeSeries& series, const FitReport& fitted,
                                double sustain_band) {
  series.validate();
  if (!(sustain_band > 0.0)) throw ValidationError("sustain_band must be > 0");
  if (fitted.model != FitModel::Logistic || !fitted.converged || !fitted.delta_e)
    throw ValidationError("stability_check requires a converged logistic fit");

  const LogisticParams p{fitted.affinity, *fitted.delta_e, fitted.y0};
  p.validate();
  if (!(p.affinity > 0.0))
    throw ValidationError("no post-inflection samples: fitted affinity is not positive");

  // fitted curve crosses half amplitude at t = ln((dE - y0)/y0) / A
  const double t_inflection = std::log((p.delta_e - p.y0) / p.y0) / p.affinity;

  std::vector<const Sample*> tail;
  for (const auto& s : series.samples)
    if (s.t > t_inflection) tail.push_back(&s);
  if (tail.empty()) throw ValidationError("no post-inflection samples exist");

  StabilityReport report;
  report.inflection_time = t_inflection;
  report.post_inflection_count = tail.size();

  double max_dev = 0.0;
  for (const auto* s : tail)
    max_dev = std::max(max_dev, std::abs(s->y - logistic_closed_form(s->t, p)));
  report.max_deviation = max_dev;

  double tm = 0.0, ym = 0.0;
  for (const auto* s : tail) {
    tm += s->t;
    ym += s->y;
  }
  tm /= static_cast<double>(tail.size());
  ym /= static_cast<double>(tail.size());
  double num = 0.0, den = 0.0;
  for (const auto* s : tail) {
    num += (s->t - tm) * (s->y - ym);
    den += (s->t - tm) * (s->t - tm);
  }
  report.tail_slope = den > 0.0 ? num / den : 0.0;

  const double band = sustain_band * p.delta_e;
  if (max_dev <= band)
    report.label = StabilityLabel::Sustained;
  else if (report.tail_slope < -band)
    report.label = StabilityLabel::Collapsing;
  else
    report.label = StabilityLabel::Watch;
  return report;
}

}  // namespace memeflow
