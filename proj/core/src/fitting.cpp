#include "memeflow/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "memeflow/dynamics.hpp"
#include "memeflow/errors.hpp"

namespace memeflow {

const char* to_string(FitModel model) {
  return model == FitModel::Logistic ? "logistic" : "exponential";
}

namespace {

double predict(const FitReport& report, double t) {
  if (report.model == FitModel::Logistic)
    return logistic_closed_form(t, {report.affinity, *report.delta_e, report.y0});
  return report.y0 * std::exp(report.affinity * t);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  LinearFit f;
  f.slope = den > 0.0 ? num / den : 0.0;
  f.intercept = ym - f.slope * xm;
  return f;
}

double model_sse(const TimeSeries& s, double a, double de, double y0) {
  const LogisticParams p{a, de, y0};
  double sse = 0.0;
  for (const auto& smp : s.samples) {
    const double r = smp.y - logistic_closed_form(smp.t, p);
    sse += r * r;
  }
  return sse;
}

// rows: d f / d (affinity, delta_e, y0) at each sample time
void analytic_jacobian(const TimeSeries& s, double a, double de, double y0, Matrix& jac) {
  const double b = (de - y0) / y0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = s.samples[i].t;
    const double e = std::exp(-a * t);
    const double d = 1.0 + b * e;
    jac(i, 0) = de * b * t * e / (d * d);
    jac(i, 1) = 1.0 / d - de * e / (y0 * d * d);
    jac(i, 2) = de * de * e / (y0 * y0 * d * d);
  }
}

void difference_jacobian(const TimeSeries& s, const double theta[3], Matrix& jac) {
  for (int j = 0; j < 3; ++j) {
    double th[3] = {theta[0], theta[1], theta[2]};
    const double h = std::max(1e-8, 1e-8 * std::abs(th[j]));
    th[j] += h;
    const LogisticParams base{theta[0], theta[1], theta[2]};
    const LogisticParams bumped{th[0], th[1], th[2]};
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double t = s.samples[i].t;
      jac(i, j) = (logistic_closed_form(t, bumped) - logistic_closed_form(t, base)) / h;
    }
  }
}

}  // namespace

FitReport fit_logistic(const TimeSeries& series) {
  series.validate();
  const std::size_t n = series.size();
  if (n < 5) throw TooFewSamples("fit_logistic requires at least 5 samples");
  for (const auto& s : series.samples)
    if (!(s.y > 0.0)) throw NonPositiveData("fit_logistic requires all y > 0");

  double ymax = 0.0;
  bool constant = true;
  for (const auto& s : series.samples) {
    ymax = std::max(ymax, s.y);
    constant = constant && s.y == series.samples.front().y;
  }
  if (constant)
    throw DegenerateSeries("constant series: the amplitude is unidentifiable");

  const double cap = kAmplitudeCapFactor * ymax;
  const double de0 = 1.05 * ymax;

  // affinity seed from the log-slope of the early (low-amplitude) samples
  std::vector<double> et, el;
  for (const auto& s : series.samples) {
    if (s.y < 0.5 * de0) {
      et.push_back(s.t);
      el.push_back(std::log(s.y));
    }
  }
  if (et.size() < 2) {
    et = {series.samples[0].t, series.samples[1].t};
    el = {std::log(series.samples[0].y), std::log(series.samples[1].y)};
  }
  double a0 = least_squares_line(et, el).slope;
  if (!std::isfinite(a0) || a0 == 0.0) {
    const double span = series.samples.back().t - series.samples.front().t;
    a0 = 1.0 / std::max(span, 1e-12);
  }

  double theta[3] = {a0, de0, std::min(series.samples.front().y, 0.99 * de0)};
  double sse = model_sse(series, theta[0], theta[1], theta[2]);

  Matrix jac(n, 3);
  double lambda = 1e-3;
  bool converged = false;
  int iterations = 0;

  for (int iter = 1; iter <= 500; ++iter) {
    iterations = iter;
    analytic_jacobian(series, theta[0], theta[1], theta[2], jac);
    bool finite = true;
    for (std::size_t i = 0; i < n && finite; ++i)
      for (int j = 0; j < 3; ++j)
        if (!std::isfinite(jac(i, j))) {
          finite = false;
          break;
        }
    if (!finite) difference_jacobian(series, theta, jac);

    Matrix jtj(3, 3, 0.0);
    std::vector<double> grad(3, 0.0);
    {
      const LogisticParams p{theta[0], theta[1], theta[2]};
      for (std::size_t i = 0; i < n; ++i) {
        const double r = series.samples[i].y - logistic_closed_form(series.samples[i].t, p);
        for (int j = 0; j < 3; ++j) {
          grad[j] += jac(i, j) * r;
          for (int k = j; k < 3; ++k) jtj(j, k) += jac(i, j) * jac(i, k);
        }
      }
      jtj(1, 0) = jtj(0, 1);
      jtj(2, 0) = jtj(0, 2);
      jtj(2, 1) = jtj(1, 2);
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      Matrix damped = jtj;
      for (int j = 0; j < 3; ++j) damped(j, j) += lambda * jtj(j, j);
      auto delta = detail::lu_solve(damped, grad);
      if (!delta) {
        lambda = std::min(lambda * 10.0, 1e12);
        continue;
      }
      double trial[3] = {theta[0] + (*delta)[0], theta[1] + (*delta)[1],
                         theta[2] + (*delta)[2]};
      trial[1] = std::clamp(trial[1], 1e-12, cap);
      trial[2] = std::clamp(trial[2], 1e-12, trial[1] * (1.0 - 1e-12));
      const double s2 = model_sse(series, trial[0], trial[1], trial[2]);
      if (std::isfinite(s2) && s2 < sse) {
        const double rel = (sse - s2) / std::max(sse, 1e-300);
        double stepn = 0.0;
        for (int j = 0; j < 3; ++j)
          stepn += (trial[j] - theta[j]) * (trial[j] - theta[j]);
        stepn = std::sqrt(stepn);
        theta[0] = trial[0];
        theta[1] = trial[1];
        theta[2] = trial[2];
        sse = s2;
        lambda = std::max(lambda / 10.0, 1e-12);
        stepped = true;
        if (rel < 1e-10 || stepn < 1e-8) converged = true;
        break;
      }
      lambda = std::min(lambda * 10.0, 1e12);
    }
    if (!stepped) {
      converged = true;  // no improving step left: the parameter step is zero
      break;
    }
    if (converged) break;
  }

  FitReport report;
  report.model = FitModel::Logistic;
  report.affinity = theta[0];
  report.delta_e = theta[1];
  report.y0 = theta[2];
  report.converged = converged;
  report.iterations = iterations;
  report.residuals.reserve(n);
  for (const auto& s : series.samples) report.residuals.push_back(s.y - predict(report, s.t));
  const Goodness g = goodness(series, report);
  report.sse = g.sse;
  report.aic = g.aic;
  report.perfect_fit = g.perfect_fit;
  return report;
}

FitReport fit_exponential(const TimeSeries& series) {
  series.validate();
  const std::size_t n = series.size();
  if (n < 3) throw TooFewSamples("fit_exponential requires at least 3 samples");
  for (const auto& s : series.samples)
    if (!(s.y > 0.0)) throw NonPositiveData("fit_exponential requires all y > 0");

  std::vector<double> ts, ln;
  ts.reserve(n);
  ln.reserve(n);
  for (const auto& s : series.samples) {
    ts.push_back(s.t);
    ln.push_back(std::log(s.y));
  }
  const LinearFit line = least_squares_line(ts, ln);

  FitReport report;
  report.model = FitModel::Exponential;
  report.affinity = line.slope;
  report.y0 = std::exp(line.intercept);
  report.converged = true;
  report.iterations = 1;
  report.residuals.reserve(n);
  for (const auto& s : series.samples) report.residuals.push_back(s.y - predict(report, s.t));
  const Goodness g = goodness(series, report);
  report.sse = g.sse;
  report.aic = g.aic;
  report.perfect_fit = g.perfect_fit;
  return report;
}

Goodness goodness(const TimeSeries& series, const FitReport& report) {
  const std::size_t n = series.size();
  if (n == 0) throw ValidationError("goodness on an empty series");
  if (report.model == FitModel::Logistic && !report.delta_e)
    throw ValidationError("logistic report without delta_e");

  double sse = 0.0;
  for (const auto& s : series.samples) {
    const double r = s.y - predict(report, s.t);
    sse += r * r;
  }
  Goodness g;
  g.sse = sse;
  const int k = report.model == FitModel::Logistic ? 3 : 2;
  if (sse == 0.0) {
    g.perfect_fit = true;
    g.aic = -std::numeric_limits<double>::infinity();
  } else {
    g.aic = static_cast<double>(n) * std::log(sse / static_cast<double>(n)) + 2.0 * k;
  }
  return g;
}

}  // namespace memeflow
