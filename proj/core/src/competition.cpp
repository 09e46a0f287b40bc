#include "memeflow/competition.hpp"

#include <cmath>
#include <string>

#include "linalg.hpp"
#include "memeflow/errors.hpp"

namespace memeflow {

const char* to_string(EquilibriumStability stability) {
  switch (stability) {
    case EquilibriumStability::Stable: return "Stable";
    case EquilibriumStability::Unstable: return "Unstable";
    case EquilibriumStability::Indeterminate: return "Indeterminate";
  }
  return "?";
}

void CompetitionSystem::validate() const {
  const std::size_t n = affinities.size();
  if (n == 0) throw ValidationError("competition system has no memes");
  if (delta_es.size() != n)
    throw ValidationError("delta_es has " + std::to_string(delta_es.size()) +
                          " entries, expected " + std::to_string(n));
  if (alpha.rows() != n || alpha.cols() != n)
    throw ValidationError("alpha is " + std::to_string(alpha.rows()) + "x" +
                          std::to_string(alpha.cols()) + ", expected " +
                          std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(affinities[i]))
      throw ValidationError("affinity " + std::to_string(i) + " is not finite");
    if (!std::isfinite(delta_es[i]))
      throw ValidationError("delta_e " + std::to_string(i) + " is not finite");
    if (!normalized && !(delta_es[i] > 0.0))
      throw ValidationError("delta_e " + std::to_string(i) + " must be positive");
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(alpha(i, j)))
        throw ValidationError("alpha(" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not finite");
  }
}

CompetitionSystem normalize(const CompetitionSystem& sys) {
  if (sys.normalized) throw ValidationError("system is already normalized");
  sys.validate();
  CompetitionSystem out = sys;
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (std::size_t j = 0; j < sys.size(); ++j)
      out.alpha(i, j) = sys.alpha(i, j) / sys.delta_es[i];
  out.normalized = true;
  return out;
}

StateVector competition_rhs(const StateVector& y, const CompetitionSystem& sys) {
  if (!sys.normalized) throw ValidationError("competition_rhs requires a normalized system");
  const std::size_t n = sys.size();
  if (y.size() != n)
    throw ValidationError("state has " + std::to_string(y.size()) +
                          " entries, expected " + std::to_string(n));
  StateVector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (std::size_t j = 0; j < n; ++j) coupling += sys.alpha(i, j) * y[j];
    out[i] = sys.affinities[i] * y[i] * (1.0 - coupling);
  }
  return out;
}

std::vector<TimeSeries> integrate_competition(const CompetitionSystem& sys,
                                              const StateVector& y0, double t_end,
                                              double step) {
  if (!sys.normalized)
    throw ValidationError("integrate_competition requires a normalized system");
  sys.validate();
  const std::size_t n = sys.size();
  if (y0.size() != n)
    throw ValidationError("y0 has " + std::to_string(y0.size()) + " entries, expected " +
                          std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!(y0[i] >= 0.0) || !std::isfinite(y0[i]))
      throw ValidationError("y0[" + std::to_string(i) + "] must be non-negative and finite");
  if (!(t_end > 0.0) || !(step > 0.0))
    throw ValidationError("integrate_competition requires t_end > 0 and step > 0");

  const auto steps = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
  std::vector<TimeSeries> out(n);
  for (auto& ts : out) ts.samples.reserve(steps + 1);

  StateVector y = y0;
  auto emit = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) out[i].samples.push_back({t, y[i]});
  };
  emit(0.0);

  StateVector k1, k2, k3, k4, tmp(n);
  for (std::size_t s = 1; s <= steps; ++s) {
    k1 = competition_rhs(y, sys);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * step * k1[i];
    k2 = competition_rhs(tmp, sys);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * step * k2[i];
    k3 = competition_rhs(tmp, sys);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * k3[i];
    k4 = competition_rhs(tmp, sys);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += (step / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y[i]))
        throw StepUnstable("component " + std::to_string(i) + " became non-finite at t=" +
                           std::to_string(static_cast<double>(s) * step));
      if (y[i] < 0.0) {
        if (y[i] < -1e-12)
          throw StepUnstable("component " + std::to_string(i) + " went negative at t=" +
                             std::to_string(static_cast<double>(s) * step));
        y[i] = 0.0;  // integration dust
      }
    }
    emit(static_cast<double>(s) * step);
  }
  return out;
}

std::optional<StateVector> interior_equilibrium(const CompetitionSystem& sys) {
  if (!sys.normalized)
    throw ValidationError("interior_equilibrium requires a normalized system");
  sys.validate();
  const std::size_t n = sys.size();

  if (detail::condition_inf(sys.alpha) > 1e12)
    throw SingularMatrix("interaction matrix is numerically singular");

  auto solution = detail::lu_solve(sys.alpha, StateVector(n, 1.0));
  if (!solution) throw SingularMatrix("interaction matrix is numerically singular");

  // one refinement pass keeps the residual comfortably inside 1e-10
  StateVector residual(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 1.0;
    for (std::size_t j = 0; j < n; ++j) r -= sys.alpha(i, j) * (*solution)[j];
    residual[i] = r;
  }
  if (auto correction = detail::lu_solve(sys.alpha, residual))
    for (std::size_t i = 0; i < n; ++i) (*solution)[i] += (*correction)[i];

  double max_resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 1.0;
    for (std::size_t j = 0; j < n; ++j) r -= sys.alpha(i, j) * (*solution)[j];
    max_resid = std::max(max_resid, std::abs(r));
  }
  if (!(max_resid < 1e-10))
    throw SingularMatrix("equilibrium solve residual too large");

  for (double v : *solution)
    if (!(v > 0.0)) return std::nullopt;  // not interior
  return solution;
}

EquilibriumStability equilibrium_stability(const CompetitionSystem& sys,
                                           const StateVector& equilibrium) {
  if (!sys.normalized)
    throw ValidationError("equilibrium_stability requires a normalized system");
  sys.validate();
  const std::size_t n = sys.size();
  if (equilibrium.size() != n)
    throw ValidationError("equilibrium has " + std::to_string(equilibrium.size()) +
                          " entries, expected " + std::to_string(n));

  // Jacobian at an interior equilibrium (coupling sum equal to 1):
  // J_ij = -A_i y*_i alpha_ij
  Matrix jac(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      jac(i, j) = -sys.affinities[i] * equilibrium[i] * sys.alpha(i, j);

  const auto poly = detail::characteristic_polynomial(jac);
  switch (detail::routh_hurwitz(poly)) {
    case detail::RouthVerdict::AllLeftHalfPlane: return EquilibriumStability::Stable;
    case detail::RouthVerdict::RightHalfPlaneRoot: return EquilibriumStability::Unstable;
    case detail::RouthVerdict::Degenerate: break;
  }
  return EquilibriumStability::Indeterminate;
}

}  // namespace memeflow
