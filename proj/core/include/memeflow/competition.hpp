#pragma once

#include <optional>
#include <vector>

#include "memeflow/matrix.hpp"
#include "memeflow/timeseries.hpp"

namespace memeflow {

using StateVector = std::vector<double>;

/// N interacting memes. Row i of alpha holds the couplings that appear inside
/// meme i's equation:
///   dy_i/dt = (A_i / dE_i) * y_i * (dE_i - sum_j alpha_ij y_j)
/// After normalize() the amplitudes are absorbed and the system reads
///   dy_i/dt = A_i * y_i * (1 - sum_j alpha_ij y_j)
struct CompetitionSystem {
  std::vector<double> affinities;
  std::vector<double> delta_es;
  Matrix alpha;
  bool normalized = false;

  std::size_t size() const { return affinities.size(); }
  void validate() const;
};

/// Absorbs each delta_e into its row of the interaction matrix
/// (alpha_ij / dE_i); the two forms produce the same trajectories. Errors on
/// an already-normalized system or any dE_i <= 0.
CompetitionSystem normalize(const CompetitionSystem& sys);

/// Right-hand side of the normalized system. Extinction is invariant:
/// y_i = 0 gives component i exactly 0.
StateVector competition_rhs(const StateVector& y, const CompetitionSystem& sys);

/// Fixed-step RK4; returns one TimeSeries per meme on a shared grid.
/// Components never go negative: undershoot below -1e-12 or a non-finite
/// value raises StepUnstable, smaller undershoot is clamped to 0.
std::vector<TimeSeries> integrate_competition(const CompetitionSystem& sys,
                                              const StateVector& y0, double t_end,
                                              double step);

/// Solves alpha * y = 1 directly; the solution is returned only when every
/// component is strictly positive. Raises SingularMatrix when the condition
/// estimate exceeds 1e12. Reports existence only -- not stability.
std::optional<StateVector> interior_equilibrium(const CompetitionSystem& sys);

enum class EquilibriumStability { Stable, Unstable, Indeterminate };

const char* to_string(EquilibriumStability stability);

/// Diagnostic: sign of the Jacobian spectrum at an interior equilibrium via
/// Routh-Hurwitz on the characteristic polynomial. Degenerate tables come
/// back Indeterminate; trust simulation for verdicts.
EquilibriumStability equilibrium_stability(const CompetitionSystem& sys,
                                           const StateVector& equilibrium);

}  // namespace memeflow
