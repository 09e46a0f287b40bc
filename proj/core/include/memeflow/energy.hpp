#pragma once

#include <string>
#include <vector>

namespace memeflow {

/// One constituent with an energy cost per degree of freedom. The list may be
/// empty (no participating degrees of freedom); costs are abstract
/// computational-energy units.
struct Constituent {
  std::string id;
  std::vector<double> dof_energies;
};

struct ConstituentSet {
  std::vector<Constituent> constituents;
};

struct EnergyLevels {
  double resting = 0.0;     // energy to sustain the elements unadulterated
  double activation = 0.0;  // total energy of the assembled structure
};

/// Total energy required to form the more complex structure: the sum of every
/// constituent's per-degree-of-freedom costs. Empty set gives 0. Rejects
/// duplicate ids and any NaN/negative/infinite cost, naming the constituent.
double activation_energy(const ConstituentSet& set);

/// activation - resting. Errors if activation < resting: no downward
/// transition is modeled.
double delta_energy(const EnergyLevels& levels);

}  // namespace memeflow
