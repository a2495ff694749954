#include "scdens/quantum.hpp"

#include "eigensystems.hpp"
#include "scdens/error.hpp"
#include "scdens/smooth_tf.hpp"
#include "scdens/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace scdens {
namespace {

bool same_energy(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

void check_particles(const PotentialModel& m, int particles)
{
    if (particles <= 0) config_error("InvalidParticleNumber", "N must be positive");
    if (particles % m.spin != 0)
        config_error("OpenShell", "N = " + std::to_string(particles) + " is not a multiple of the spin degeneracy " +
                                      std::to_string(m.spin) + "; only closed shells can be filled");
}

void check_grid(const PotentialModel& m, const Grid& grid)
{
    if (!is_billiard(m)) return;
    for (const Point& p : grid.points) {
        try {
            (void)evaluate(m, p);
        } catch (const Error&) {
            config_error("GridOutsideDomain", "grid point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                                  ") lies outside the billiard");
        }
    }
}

detail::Need need_for(const PotentialModel& m, int particles)
{
    detail::Need n;
    n.states = static_cast<double>(particles / m.spin);
    n.levels = 1;
    return n;
}

// Channels summed over the grid with spin folded in.
DensityProfile evaluate_profile(const PotentialModel& m, const Eigensystem& sys, std::span<const double> occ,
                                const Grid& grid, Exec exec)
{
    DensityProfile out;
    out.grid = grid;
    const std::size_t n = grid.size();
    out.rho.assign(n, 0.0);
    out.tau.assign(n, 0.0);
    out.tau1.assign(n, 0.0);
    for_each_index(exec, n, [&](std::size_t i) {
        const Channels c = sys.at(grid.points[i], occ);
        out.rho[i] = m.spin * c.rho;
        out.tau[i] = m.spin * c.tau;
        out.tau1[i] = m.spin * c.tau1;
    });
    finish_xi(out);
    return out;
}

} // namespace

std::unique_ptr<Eigensystem> make_eigensystem(const PotentialModel& model, std::size_t min_levels)
{
    detail::Need n;
    n.levels = std::max<std::size_t>(min_levels, 1);
    return detail::make(model, n);
}

SpectrumTable spectrum(const PotentialModel& model, std::size_t count)
{
    if (count < 1) config_error("InvalidCount", "spectrum needs count >= 1");
    auto sys = make_eigensystem(model, count);
    SpectrumTable t = sys->levels();
    t.resize(count);
    return t;
}

long long closed_shell_N(const PotentialModel& model, int shells)
{
    validate(model);
    if (model.kind != SystemKind::IHO) config_error("NoShellStructure", system_name(model.kind) + " has no main shells");
    if (shells < 1) config_error("InvalidShellCount", "need at least one shell");
    long long total = 0;
    for (int s = 0; s < shells; ++s) {
        long long g = 1;  // C(s + D - 1, D - 1)
        for (int j = 1; j < model.dim; ++j) g = g * (s + j) / j;
        total += g;
    }
    return total * model.spin;
}

FermiData fermi(const PotentialModel& model, const SpectrumTable& levels, int particles)
{
    check_particles(model, particles);
    const long long states = particles / model.spin;
    long long filled = 0;
    std::size_t i = 0;
    for (; i < levels.size() && filled < states; ++i) filled += levels[i].degeneracy;
    if (filled < states) numerical_error("SpectrumTooShort", "spectrum table holds fewer states than N");
    if (filled > states || (i < levels.size() && same_energy(levels[i].energy, levels[i - 1].energy)))
        config_error("OpenShell", "N = " + std::to_string(particles) +
                                      " would split a degenerate level; only closed shells can be filled");
    FermiData f;
    f.particles = particles;
    f.filled_levels = static_cast<int>(i);
    f.lambda = levels[i - 1].energy;
    f.lambda_smooth = smooth_fermi_energy(model, particles);
    f.delta_lambda = f.lambda - f.lambda_smooth;
    return f;
}

FermiData fermi(const PotentialModel& model, int particles)
{
    validate(model);
    check_particles(model, particles);
    auto sys = detail::make(model, need_for(model, particles));
    return fermi(model, sys->levels(), particles);
}

double smooth_fermi_energy(const PotentialModel& model, int particles)
{
    if (model.kind == SystemKind::IHO) {
        // Filled main shells M_s; the smooth Fermi energy sits at M = M_s - 1.
        int shells = 1;
        while (closed_shell_N(model, shells) < particles) ++shells;
        if (closed_shell_N(model, shells) == particles)
            return model.hbar * model.omega * ((shells - 1) + 0.5 * (model.dim + 1));
        return tf_lambda(model, particles);
    }
    if (is_billiard(model)) return weyl_lambda(model, particles);
    return tf_lambda(model, particles);
}

DensityProfile densities(const PotentialModel& model, int particles, const Grid& grid, Exec exec)
{
    validate(model);
    if (model.kind == SystemKind::Linear1D)
        config_error("NoDiscreteSpectrum", "the linear ramp has no bound states; use its continuum densities");
    check_particles(model, particles);
    check_grid(model, grid);
    auto sys = detail::make(model, need_for(model, particles));
    const FermiData f = fermi(model, sys->levels(), particles);
    std::vector<double> occ(sys->levels().size(), 0.0);
    std::fill_n(occ.begin(), f.filled_levels, 1.0);
    DensityProfile out = evaluate_profile(model, *sys, occ, grid, exec);
    out.particles = particles;
    out.lambda = f.lambda;
    out.lambda_smooth = f.lambda_smooth;
    return out;
}

std::vector<double> fermi_occupations(const SpectrumTable& levels, double mu, double temperature)
{
    std::vector<double> occ(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double e = levels[i].energy;
        if (temperature <= 0.0) {
            occ[i] = e < mu ? 1.0 : (e == mu ? 0.5 : 0.0);
            continue;
        }
        const double x = (e - mu) / temperature;
        occ[i] = x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
    }
    return occ;
}

double solve_chemical_potential(const SpectrumTable& levels, int spin, double particles, double temperature)
{
    if (temperature < 0.0) config_error("NegativeTemperature", "T must be >= 0");
    if (levels.empty()) numerical_error("ChemicalPotentialNotBracketed", "empty spectrum");
    auto count = [&](double mu) {
        const auto occ = fermi_occupations(levels, mu, temperature);
        double n = 0.0;
        for (std::size_t i = 0; i < levels.size(); ++i) n += spin * levels[i].degeneracy * occ[i];
        return n;
    };
    if (temperature == 0.0) {
        // Midway between the highest occupied and lowest empty level.
        double n = 0.0;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            n += spin * levels[i].degeneracy;
            if (n >= particles) {
                if (n > particles || i + 1 == levels.size())
                    numerical_error("ChemicalPotentialNotBracketed", "T = 0 filling does not close a shell");
                return 0.5 * (levels[i].energy + levels[i + 1].energy);
            }
        }
        numerical_error("ChemicalPotentialNotBracketed", "spectrum holds fewer than N states");
    }
    const double spread = levels.back().energy - levels.front().energy + temperature;
    double lo = levels.front().energy - 50.0 * temperature - spread;
    double hi = levels.back().energy;
    if (!(count(lo) < particles && count(hi) > particles))
        numerical_error("ChemicalPotentialNotBracketed", "average particle number not bracketed by the spectrum");
    // Inside a wide gap count() is flat to rounding; take the middle of that plateau.
    auto edge = [&](auto&& below) {
        double a = lo, b = hi;
        for (int it = 0; it < 300 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
            const double mid = 0.5 * (a + b);
            (below(count(mid)) ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    const double left = edge([&](double n) { return n < particles; });
    const double right = edge([&](double n) { return n <= particles; });
    const double mu = 0.5 * (left + right);
    if (std::abs(count(mu) - particles) > 1e-10 * std::max(1.0, particles))
        numerical_error("ChemicalPotentialNotBracketed", "bisection did not reach the requested N");
    return mu;
}

ThermalSpectrum thermal_spectrum(const PotentialModel& model, double particles, double temperature)
{
    validate(model);
    if (model.kind == SystemKind::Linear1D)
        config_error("NoDiscreteSpectrum", "the linear ramp has no bound states");
    if (!(particles > 0.0)) config_error("InvalidParticleNumber", "N must be positive");
    if (!(temperature > 0.0)) config_error("NegativeTemperature", "thermal spectra need T > 0");
    detail::Need need;
    need.states = std::ceil(particles / model.spin) + 1;
    need.levels = 2;
    for (int round = 0; round < 40; ++round) {
        ThermalSpectrum out;
        out.system = detail::make(model, need);
        const auto& lv = out.system->levels();
        // The bisection needs N(mu = top level) > N.
        const auto at_top = fermi_occupations(lv, lv.back().energy, temperature);
        double reach = 0.0;
        for (std::size_t i = 0; i < lv.size(); ++i) reach += model.spin * lv[i].degeneracy * at_top[i];
        if (reach <= particles) {
            need.levels = 2 * lv.size();
            continue;
        }
        out.mu = solve_chemical_potential(lv, model.spin, particles, temperature);
        if (fermi_occupations({lv.back()}, out.mu, temperature)[0] < 1e-12) return out;
        need.energy = out.mu + temperature * 30.0 + 0.25 * std::abs(lv.back().energy - out.mu);
        need.levels = lv.size() + 1;
    }
    numerical_error("SpectrumTruncationTooSmall", "thermal tail did not converge");
}

DensityProfile hot_densities(const PotentialModel& model, int particles, double temperature, const Grid& grid,
                             Exec exec)
{
    if (temperature < 0.0) config_error("NegativeTemperature", "T must be >= 0");
    if (temperature == 0.0) return densities(model, particles, grid, exec);
    check_grid(model, grid);
    const ThermalSpectrum ts = thermal_spectrum(model, particles, temperature);
    const auto& lv = ts.system->levels();
    const auto occ = fermi_occupations(lv, ts.mu, temperature);
    DensityProfile out = evaluate_profile(model, *ts.system, occ, grid, exec);
    out.particles = particles;
    out.temperature = temperature;
    out.lambda = ts.mu;
    out.lambda_smooth = smooth_fermi_energy(model, particles - particles % model.spin);
    out.truncation_bound = occ.back();
    return out;
}

DensityProfile linear_ramp_densities(const PotentialModel& model, double lambda, const Grid& grid)
{
    validate(model);
    if (model.kind != SystemKind::Linear1D) config_error("WrongSystem", "continuum densities need the linear ramp");
    const double a = model.slope;
    const double sigma = std::cbrt(2.0 * model.mass * a / (model.hbar * model.hbar));
    const double gs = model.spin;
    DensityProfile out;
    out.grid = grid;
    out.lambda = lambda;
    out.lambda_smooth = lambda;
    for (const Point& p : grid.points) {
        const double z = sigma * (p.x - lambda / a);
        const AiryPair ai = airy(z);
        const double a2 = ai.ai * ai.ai, d2 = ai.aip * ai.aip, ad = ai.ai * ai.aip;
        out.rho.push_back(gs * sigma * (d2 - z * a2));
        out.tau.push_back(gs * a / 3.0 * (z * z * a2 - z * d2 + ad));
        out.tau1.push_back(gs * a / 3.0 * (z * z * a2 - z * d2 - 2.0 * ad));
    }
    finish_xi(out);
    return out;
}

} // namespace scdens
