#pragma once

#include "scdens/exec.hpp"
#include "scdens/orbits.hpp"
#include "scdens/quantum.hpp"

#include <vector>

namespace scdens {

struct ThermalState {
    double temperature = 0.0;
    double mu = 0.0;
    double particles = 0.0;  // average N reached by the solver
    double free_energy = 0.0;
    double entropy = 0.0;
    double tail_occupation = 0.0;  // occupation of the highest level kept
};

// pi T tau / sinh(pi T tau), tau the orbit period over hbar.
double modulation(double temperature, double scaled_period);

// Grand-canonical bookkeeping for N particles at temperature T; the spectrum
// is extended until the highest kept level has occupation < 1e-12.
ThermalState solve_mu(const PotentialModel& model, double particles, double temperature);
ThermalState thermal_state(const SpectrumTable& levels, int spin, double particles, double temperature);

// Semiclassical oscillating densities with every orbit damped by its modulation factor.
OscillatingDensities hot_delta_densities(const PotentialModel& model, double lambda, const Grid& grid,
                                         double temperature, int k_max, Exec exec = Exec::Parallel);

// 1D trace formula with per-repetition damping.
double hot_dos_1d(const PotentialModel& model, double energy, double temperature, int k_max);

} // namespace scdens
