#pragma once

#include "scdens/exec.hpp"
#include "scdens/potentials.hpp"
#include "scdens/profile.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace scdens {

struct EnergyLevel {
    double energy = 0.0;
    int degeneracy = 1;          // without the spin factor
    std::array<int, 2> qn{};     // (n) | (n_x, n_y) | (n_r, l) | (shell, -) | (index, parity block)
};

using SpectrumTable = std::vector<EnergyLevel>;

struct FermiData {
    int particles = 0;
    double lambda = 0.0;         // highest occupied level
    double lambda_smooth = 0.0;  // TF or Weyl smooth Fermi energy
    double delta_lambda = 0.0;
    int filled_levels = 0;       // number of spectrum entries that are occupied
};

// Eigenstates of one system. Densities are sums over levels weighted by the
// occupation of each level (degeneracy handled internally, spin not).
class Eigensystem {
public:
    virtual ~Eigensystem() = default;
    const SpectrumTable& levels() const { return levels_; }
    virtual Channels at(Point p, std::span<const double> occupation) const = 0;

protected:
    SpectrumTable levels_;
};

// Builds at least `min_levels` levels (more when a degenerate group or a
// basis block makes that natural), sorted by energy.
std::unique_ptr<Eigensystem> make_eigensystem(const PotentialModel& model, std::size_t min_levels);

SpectrumTable spectrum(const PotentialModel& model, std::size_t count);

// Particles in the first `shells` main shells (IHO only), spin included.
long long closed_shell_N(const PotentialModel& model, int shells);

// Number of levels (as in the spectrum table) needed to host N particles.
FermiData fermi(const PotentialModel& model, int particles);
FermiData fermi(const PotentialModel& model, const SpectrumTable& levels, int particles);

double smooth_fermi_energy(const PotentialModel& model, int particles);

DensityProfile densities(const PotentialModel& model, int particles, const Grid& grid, Exec exec = Exec::Parallel);

// Chemical potential for average particle number N at temperature T.
double solve_chemical_potential(const SpectrumTable& levels, int spin, double particles, double temperature);
std::vector<double> fermi_occupations(const SpectrumTable& levels, double mu, double temperature);

// Spectrum long enough for thermal sums: grown until the highest kept level
// has occupation below 1e-12 at the solved chemical potential.
struct ThermalSpectrum {
    std::unique_ptr<Eigensystem> system;
    double mu = 0.0;
};
ThermalSpectrum thermal_spectrum(const PotentialModel& model, double particles, double temperature);

DensityProfile hot_densities(const PotentialModel& model, int particles, double temperature, const Grid& grid,
                             Exec exec = Exec::Parallel);

// Linear ramp (continuum): exact local densities at Fermi energy lambda.
DensityProfile linear_ramp_densities(const PotentialModel& model, double lambda, const Grid& grid);

} // namespace scdens
