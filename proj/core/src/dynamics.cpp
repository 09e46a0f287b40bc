#include "memeflow/dynamics.hpp"

#include <cmath>

#include "memeflow/errors.hpp"

namespace memeflow {

void TimeSeries::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].y))
      throw ValidationError("time series has a non-finite sample at index " +
                            std::to_string(i));
    if (i > 0 && !(samples[i].t > samples[i - 1].t))
      throw ValidationError("time series t values must be strictly increasing (index " +
                            std::to_string(i) + ")");
  }
}

void LogisticParams::validate() const {
  if (!std::isfinite(affinity)) throw ValidationError("affinity must be finite");
  if (!(delta_e > 0.0) || !std::isfinite(delta_e))
    throw ValidationError("delta_e must be positive and finite");
  if (!(y0 > 0.0 && y0 < delta_e))
    throw ValidationError("y0 must lie strictly between 0 and delta_e");
}

LogisticParams LogisticParams::from_epsilon(double affinity, double delta_e,
                                            double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("epsilon must lie in (0, 1)");
  LogisticParams p{affinity, delta_e, epsilon * delta_e};
  p.validate();
  return p;
}

void EnergyContext::validate() const {
  if (!(applied_energy >= 0.0) || !std::isfinite(applied_energy))
    throw ValidationError("applied energy must be non-negative and finite");
  if (!(valid_lo <= valid_hi))
    throw ValidationError("validity interval must satisfy lo <= hi");
}

double logistic_rhs(double y, const LogisticParams& p) {
  return (p.affinity / p.delta_e) * y * (p.delta_e - y);
}

double logistic_closed_form(double t, const LogisticParams& p) {
  const double b = (p.delta_e - p.y0) / p.y0;
  return p.delta_e / (1.0 + b * std::exp(-p.affinity * t));
}

double logistic_curvature(double y, const LogisticParams& p) {
  const double r = p.affinity / p.delta_e;
  return r * r * y * (p.delta_e - 2.0 * y) * (p.delta_e - y);
}

double exponential_solution(double t, double affinity, double y0) {
  if (!(y0 > 0.0)) throw ValidationError("exponential_solution requires y0 > 0");
  return y0 * std::exp(affinity * t);
}

namespace {

double rk4_step(double y, double h, const LogisticParams& p) {
  const double k1 = logistic_rhs(y, p);
  const double k2 = logistic_rhs(y + 0.5 * h * k1, p);
  const double k3 = logistic_rhs(y + 0.5 * h * k2, p);
  const double k4 = logistic_rhs(y + h * k3, p);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TimeSeries integrate(const LogisticParams& p, double t_end, double step) {
  p.validate();
  if (!(t_end > 0.0) || !(step > 0.0))
    throw ValidationError("integrate requires t_end > 0 and step > 0");
  if (step > t_end) throw ValidationError("integrate requires step <= t_end");
  if (!(p.delta_e * p.affinity * step < 1.0))
    throw StepUnstable("step too large: delta_e * affinity * step must stay below 1");

  const auto steps = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
  TimeSeries out;
  out.samples.reserve(steps + 1);
  double y = p.y0;
  out.samples.push_back({0.0, y});
  for (std::size_t i = 1; i <= steps; ++i) {
    y = rk4_step(y, step, p);
    out.samples.push_back({static_cast<double>(i) * step, y});
  }
  return out;
}

TimeSeries run_stages(const std::vector<StageSpec>& stages, double step) {
  if (stages.empty()) throw ValidationError("run_stages requires at least one stage");
  if (!(step > 0.0)) throw ValidationError("run_stages requires step > 0");
  for (const auto& s : stages) {
    s.params.validate();
    if (!(s.completion_fraction > 0.0 && s.completion_fraction < 1.0))
      throw ValidationError("completion_fraction must lie in (0, 1)");
    if (!(s.params.delta_e * s.params.affinity * step < 1.0))
      throw StepUnstable("step too large for a stage: delta_e * affinity * step must stay below 1");
  }

  TimeSeries out;
  double base = 0.0;     // resting level accumulated from completed transitions
  double t_start = 0.0;  // global time where the current stage begins

  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& p = stages[k].params;
    const double threshold = stages[k].completion_fraction * p.delta_e;

    if (p.y0 >= threshold) {
      // already past the completion level at the stage's start
      if (out.empty()) out.samples.push_back({t_start, base + p.y0});
      base += p.delta_e;
      continue;
    }
    if (p.affinity <= 0.0)
      throw ValidationError("stage " + std::to_string(k) +
                            " cannot reach its completion fraction (affinity <= 0)");

    if (out.empty()) out.samples.push_back({0.0, base + p.y0});

    // the crossing sits within a couple of steps of the closed-form time
    const double b = (p.delta_e - p.y0) / p.y0;
    const double t_cross =
        std::log(b * threshold / (p.delta_e - threshold)) / p.affinity;
    const auto max_steps =
        static_cast<std::size_t>(std::ceil(t_cross / step)) * 4 + 64;

    double y_prev = p.y0;
    bool completed = false;
    for (std::size_t i = 1; i <= max_steps; ++i) {
      const double y = rk4_step(y_prev, step, p);
      const double tau = static_cast<double>(i) * step;
      if (y >= threshold) {
        double tau_star = tau;
        if (y > threshold) {
          const double frac = (threshold - y_prev) / (y - y_prev);
          tau_star = tau - step + frac * step;
        }
        out.samples.push_back({t_start + tau_star, base + threshold});
        t_start += tau_star;
        completed = true;
        break;
      }
      out.samples.push_back({t_start + tau, base + y});
      y_prev = y;
    }
    if (!completed)
      throw Error("stage " + std::to_string(k) + " failed to reach its completion level");
    base += p.delta_e;  // the transition is final: next amplitude is measured from here
  }
  return out;
}

ContextValidity check_context(const LogisticParams& p, const EnergyContext& ctx) {
  p.validate();
  ctx.validate();
  const bool in = ctx.applied_energy >= ctx.valid_lo && ctx.applied_energy <= ctx.valid_hi;
  return in ? ContextValidity::InRange : ContextValidity::OutOfRange;
}

}  // namespace memeflow
