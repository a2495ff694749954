#include "scdens/thermal.hpp"

#include "scdens/error.hpp"

#include <cmath>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;

// nu log nu with its removable singularity at 0.
double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

} // namespace

double modulation(double temperature, double scaled_period)
{
    if (temperature < 0.0 || scaled_period < 0.0) config_error("InvalidArgument", "modulation needs T, period >= 0");
    const double x = pi * temperature * scaled_period;
    if (x < 1e-4) return 1.0 - x * x / 6.0;
    if (x > 700.0) return 2.0 * x * std::exp(-x);
    return x / std::sinh(x);
}

ThermalState thermal_state(const SpectrumTable& levels, int spin, double particles, double temperature)
{
    ThermalState st;
    st.temperature = temperature;
    st.mu = solve_chemical_potential(levels, spin, particles, temperature);
    const auto occ = fermi_occupations(levels, st.mu, temperature);
    double n = 0.0, energy = 0.0, entropy = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double w = spin * levels[i].degeneracy;
        n += w * occ[i];
        energy += w * levels[i].energy * occ[i];
        if (temperature > 0.0) {
            // Hole occupation evaluated directly; 1 - occ loses everything below 1e-16.
            const double hole = 1.0 / (1.0 + std::exp((st.mu - levels[i].energy) / temperature));
            entropy -= w * (xlogx(occ[i]) + xlogx(hole));
        }
    }
    st.particles = n;
    st.entropy = entropy;
    st.free_energy = energy - temperature * entropy;
    st.tail_occupation = occ.empty() ? 0.0 : occ.back();
    if (temperature > 0.0 && st.tail_occupation > 1e-10)
        numerical_error("SpectrumTruncationTooSmall", "occupation of the highest kept level exceeds 1e-10");
    return st;
}

ThermalState solve_mu(const PotentialModel& model, double particles, double temperature)
{
    if (temperature < 0.0) config_error("NegativeTemperature", "T must be >= 0");
    if (temperature == 0.0) {
        const int n = static_cast<int>(std::lround(particles));
        if (std::abs(n - particles) > 0.0) config_error("InvalidParticleNumber", "T = 0 needs an integer N");
        const FermiData f = fermi(model, n);
        const auto sys = make_eigensystem(model, f.filled_levels + 1);
        return thermal_state(sys->levels(), model.spin, particles, 0.0);
    }
    const ThermalSpectrum ts = thermal_spectrum(model, particles, temperature);
    return thermal_state(ts.system->levels(), model.spin, particles, temperature);
}

OscillatingDensities hot_delta_densities(const PotentialModel& model, double lambda, const Grid& grid,
                                         double temperature, int k_max, Exec exec)
{
    if (temperature < 0.0) config_error("NegativeTemperature", "T must be >= 0");
    OscillatingDensities out;
    out.grid = grid;
    out.lambda = lambda;
    out.resize(grid.size());
    const ImageCutoff cut = model.kind == SystemKind::RectBilliard ? default_image_cutoff(model) : ImageCutoff{};
    const double p_lambda = std::sqrt(2.0 * model.mass * lambda);
    for_each_index(exec, grid.size(), [&](std::size_t i) {
        const Point p = grid.points[i];
        std::vector<ClosedOrbit> orbits;
        if (model.kind == SystemKind::RectBilliard) {
            orbits = rect_orbits(model, lambda, p, cut.K, cut.max_length);
        } else {
            const double s = is_radial(model) ? std::hypot(p.x, p.y) : p.x;
            if (model.dim > 1 && s < RadialSumOptions{}.caustic_c * model.hbar / p_lambda)
                numerical_error("CausticSingularity", "r is inside the caustic switch radius");
            orbits = radial_orbits(model, lambda, s, k_max);
        }
        out.set(i, assemble(orbits, lambda, p, model, temperature));
    });
    return out;
}

double hot_dos_1d(const PotentialModel& model, double energy, double temperature, int k_max)
{
    if (!is_one_dimensional(model) || model.kind == SystemKind::Linear1D)
        config_error("Unsupported", "the 1D trace formula needs a bound 1D system");
    if (k_max < 1) return 0.0;
    const ActionPeriod po = full_period(model, energy);
    // Two Morse units per smooth turning point, four per hard wall.
    const double sign = model.kind == SystemKind::Box1D ? 1.0 : -1.0;
    double sum = 0.0, phase = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        phase *= sign;
        double term = phase * std::cos(k * po.action / model.hbar);
        if (temperature > 0.0) term *= modulation(temperature, k * po.period / model.hbar);
        sum += term;
    }
    return po.period / (pi * model.hbar) * sum;
}

} // namespace scdens
