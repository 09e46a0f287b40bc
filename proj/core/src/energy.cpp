#include "memeflow/energy.hpp"

#include <cmath>
#include <unordered_set>

#include "memeflow/errors.hpp"

namespace memeflow {

double activation_energy(const ConstituentSet& set) {
  std::unordered_set<std::string> seen;
  double total = 0.0;
  for (const auto& c : set.constituents) {
    if (!seen.insert(c.id).second)
      throw ValidationError("duplicate constituent id '" + c.id + "'");
    for (double e : c.dof_energies) {
      if (std::isnan(e))
        throw ValidationError("constituent '" + c.id + "' has a NaN dof energy");
      if (std::isinf(e))
        throw ValidationError("constituent '" + c.id + "' has an infinite dof energy");
      if (e < 0.0)
        throw ValidationError("constituent '" + c.id + "' has a negative dof energy");
      total += e;
    }
  }
  return total;
}

double delta_energy(const EnergyLevels& levels) {
  if (!std::isfinite(levels.resting) || !std::isfinite(levels.activation))
    throw ValidationError("energy levels must be finite");
  if (levels.resting < 0.0 || levels.activation < 0.0)
    throw ValidationError("energy levels must be non-negative");
  if (levels.activation < levels.resting)
    throw ValidationError("activation energy below resting energy: no upward transition");
  return levels.activation - levels.resting;
}

}  // namespace memeflow
