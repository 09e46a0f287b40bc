#pragma once

#include <vector>

#include "memeflow/timeseries.hpp"

namespace memeflow {

// The growth curve starts at y0 = epsilon * delta_e by default: y = 0 is a
// fixed point of the growth equation, so the exact lower asymptote is reached
// only in the infinite past and the curve is translated to start suitably
// close to it.
inline constexpr double kDefaultInitialFraction = 0.01;

/// Parameters of the bounded growth transition: amplitude grows from y0
/// toward the upper asymptote delta_e at rate set by the affinity.
struct LogisticParams {
  double affinity = 0.0;  // growth-rate constant, 1/time
  double delta_e = 1.0;   // upper asymptote (energy units), > 0
  double y0 = kDefaultInitialFraction;  // initial amplitude, in (0, delta_e)

  void validate() const;

  static LogisticParams from_epsilon(double affinity, double delta_e,
                                     double epsilon = kDefaultInitialFraction);
};

/// Applied energy and the interval of applied energies within which the
/// constant-affinity model is trusted.
struct EnergyContext {
  double applied_energy = 0.0;
  double valid_lo = 0.0;
  double valid_hi = 0.0;  // closed interval [valid_lo, valid_hi]

  void validate() const;
};

enum class ContextValidity { InRange, OutOfRange };

/// One leg of a chained run: the stage is deemed complete when its amplitude
/// reaches completion_fraction * delta_e and the next stage begins.
struct StageSpec {
  LogisticParams params;
  double completion_fraction = 0.99;  // in (0, 1)
};

/// dy/dt = (A / dE) * y * (dE - y). Zero exactly at y = 0 and y = dE.
double logistic_rhs(double y, const LogisticParams& p);

/// dE / (1 + ((dE - y0)/y0) exp(-A t)): equals y0 at t = 0 and approaches dE
/// as t grows.
double logistic_closed_form(double t, const LogisticParams& p);

/// d2y/dt2 = (A/dE)^2 * y * (dE - 2y) * (dE - y). Zero exactly at
/// y = 0, dE/2, dE; the middle root is where growth acceleration flips sign.
double logistic_curvature(double y, const LogisticParams& p);

/// y0 * exp(A t): the unbounded variant.
double exponential_solution(double t, double affinity, double y0);

/// Fixed-step RK4 over the bounded growth equation on the grid {0, step, ...}.
/// Requires step <= t_end and the stability guard delta_e * affinity * step < 1.
TimeSeries integrate(const LogisticParams& p, double t_end, double step);

/// Chains stages: each runs until it reaches its completion fraction (final
/// sample interpolated exactly at that level), after which the transition is
/// final -- the resting level advances by the stage's full delta_e and the
/// next stage's amplitude is measured from it. Errors if a stage cannot reach
/// its completion fraction (affinity <= 0).
TimeSeries run_stages(const std::vector<StageSpec>& stages, double step);

/// InRange iff the applied energy lies within the closed validity interval.
/// OutOfRange results are surfaced as warnings by downstream drivers.
ContextValidity check_context(const LogisticParams& p, const EnergyContext& ctx);

}  // namespace memeflow
