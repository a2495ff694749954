#include <doctest.h>

#include "scdens/error.hpp"
#include "scdens/quantum.hpp"
#include "scdens/thermal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace scdens;
using std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

namespace {

double fold_kernel(double x, double t)
{
    const double c = std::cosh(x / (2 * t));
    return 1 / (4 * t * c * c);
}

// Convolution of f with the Fermi folding kernel, over +-40 T.
double folded(auto&& f, double e, double t)
{
    double sum = 0.0;
    const int panels = 80;
    const double w = 80 * t / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = -40 * t + i * w;
        sum += GK::integrate([&](double x) { return f(e - x) * fold_kernel(x, t); }, lo, lo + w, 0, 1e-13);
    }
    return sum;
}

} // namespace

TEST_CASE("modulation factor")
{
    CHECK(modulation(0.0, 5.0) == 1.0);
    CHECK(modulation(0.7, 0.0) == 1.0);
    CHECK(modulation(1 / pi, 1.0) == doctest::Approx(1 / std::sinh(1.0)).epsilon(1e-14));
    CHECK(modulation(2.0, 3e-6) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(modulation(100.0, 10.0) < 1e-300 * 1e10);
    double prev = 1.0;
    for (double t = 0.01; t < 5.0; t *= 1.3) {
        const double m = modulation(t, 2 * pi);
        CHECK(m < prev);
        CHECK(m > 0.0);
        CHECK(modulation(0.2, t) < modulation(0.2, t / 1.3));
        prev = m;
    }
    CHECK_THROWS_AS(modulation(-1.0, 1.0), Error);
}

TEST_CASE("cold closed shell")
{
    auto m = iho(3);
    const auto st = solve_mu(m, 40, 0.0);
    CHECK(st.mu > 4.5);
    CHECK(st.mu < 5.5);
    CHECK(st.entropy == 0.0);
    CHECK(st.particles == doctest::Approx(40).epsilon(1e-12));
    // 2 + 6 + 12 + 20 particles in shells 1.5, 2.5, 3.5, 4.5
    CHECK(st.free_energy == doctest::Approx(2 * 1.5 + 6 * 2.5 + 12 * 3.5 + 20 * 4.5).epsilon(1e-12));
}

TEST_CASE("particle number and entropy at finite temperature")
{
    auto box = box1d(pi);
    for (double t : {0.5, 3.0, 20.0}) {
        const auto st = solve_mu(box, 20, t);
        CHECK(std::abs(st.particles - 20) < 1e-10);
        CHECK(st.entropy > 0.0);
        CHECK(st.tail_occupation < 1e-12);
    }
    // Entropy vanishes with T for the gapped closed shell.
    CHECK(solve_mu(box, 20, 1e-3).entropy < 1e-100);
    CHECK_THROWS_AS(solve_mu(box, 20, -1.0), Error);
}

TEST_CASE("free energy drops below the cold energy")
{
    // Levels n^2 / 2; mean spacing at the Fermi level n = 10 is about 10.
    auto box = box1d(pi);
    double cold = 0.0;
    for (int n = 1; n <= 10; ++n) cold += 2 * 0.5 * n * n;
    CHECK(solve_mu(box, 20, 0.0).free_energy == doctest::Approx(cold).epsilon(1e-12));
    CHECK(solve_mu(box, 20, 0.5 * 10).free_energy < cold);
}

TEST_CASE("entropy is minus the temperature derivative of F")
{
    auto box = box1d(pi);
    auto osc = iho(1);
    for (const auto& m : {box, osc})
        for (double t : {0.4, 2.0, 7.0}) {
            const double h = 1e-3 * t;
            const double dfdt = (solve_mu(m, 20, t + h).free_energy - solve_mu(m, 20, t - h).free_energy) / (2 * h);
            CHECK(-dfdt == doctest::Approx(solve_mu(m, 20, t).entropy).epsilon(1e-4));
        }
}

TEST_CASE("free energy as an integral of the folded level density")
{
    // F = g_s sum_n int^mu E f_T(E - E_n) dE
    auto m = iho(1);
    const double t = 0.8;
    const ThermalSpectrum ts = thermal_spectrum(m, 10, t);
    const auto st = thermal_state(ts.system->levels(), m.spin, 10, t);
    double f = 0.0;
    for (const auto& lv : ts.system->levels()) {
        const double lo = lv.energy - 60 * t;
        if (st.mu <= lo) continue;
        f += m.spin * lv.degeneracy *
             GK::integrate([&](double e) { return e * fold_kernel(e - lv.energy, t); }, lo, st.mu, 15, 1e-14);
    }
    CHECK(f == doctest::Approx(st.free_energy).epsilon(1e-9));
}

TEST_CASE("truncated spectra are refused")
{
    const auto levels = spectrum(box1d(pi), 12);
    CHECK_THROWS_AS(thermal_state(levels, 2, 20, 10.0), Error);
    CHECK_NOTHROW(thermal_state(levels, 2, 20, 0.0));
}

TEST_CASE("hot trace formula")
{
    auto m = iho(1);
    for (double e : {3.1, 4.5, 7.77}) CHECK(hot_dos_1d(m, e, 0.0, 20) == trace_formula_1d(m, e, 20));
    CHECK(std::abs(hot_dos_1d(m, 4.5, 50.0, 20)) < 1e-100);
    CHECK(hot_dos_1d(m, 4.5, 0.3, 0) == 0.0);
}

TEST_CASE("modulation matches the folded trace formula")
{
    // Harmonic k of the oscillator trace formula, cold and folded, for T <= 0.3.
    auto m = iho(1);
    for (double t : {0.1, 0.2, 0.3})
        for (int k = 1; k <= 3; ++k) {
            auto harmonic = [&](double e) { return trace_formula_1d(m, e, k) - trace_formula_1d(m, e, k - 1); };
            for (double e : {4.0, 5.5, 6.13}) {
                const double hot = hot_dos_1d(m, e, t, k) - hot_dos_1d(m, e, t, k - 1);
                const double amp = 2.0 / m.hbar * modulation(t, 2 * pi * k);
                CHECK(std::abs(folded(harmonic, e, t) - hot) < 0.01 * amp);
            }
        }
}

TEST_CASE("hot orbit sums")
{
    auto box = box1d(pi);
    const double lam = 50.0;
    const auto g = line_grid(0.3, 2.8, 21);
    const auto cold = scl_profile_1d(box, lam, g, 50);
    const auto hot0 = hot_delta_densities(box, lam, g, 0.0, 50);
    CHECK(cold.rho == hot0.rho);
    CHECK(cold.tau1 == hot0.tau1);
    const auto warm = hot_delta_densities(box, lam, g, 5.0, 50);
    const auto hot = hot_delta_densities(box, lam, g, 200.0, 50);
    double max_cold = 0.0, max_hot = 0.0, ss_cold = 0.0, ss_warm = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        max_cold = std::max(max_cold, std::abs(cold.rho[i]));
        max_hot = std::max(max_hot, std::abs(hot.rho[i]));
        ss_cold += cold.rho[i] * cold.rho[i];
        ss_warm += warm.rho[i] * warm.rho[i];
    }
    CHECK(ss_warm < ss_cold);
    CHECK(max_hot < 1e-12 * max_cold);
    const auto serial = hot_delta_densities(iho(3), 21.0, line_grid(1.5, 5.5, 17), 0.2, 15, Exec::Serial);
    const auto parallel = hot_delta_densities(iho(3), 21.0, line_grid(1.5, 5.5, 17), 0.2, 15, Exec::Parallel);
    CHECK(serial.rho == parallel.rho);
}
