#include <doctest.h>

#include "scdens/error.hpp"
#include "scdens/smooth_tf.hpp"

#include <cmath>
#include <numbers>

using namespace scdens;
using std::numbers::pi;

namespace {

double simpson(auto&& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
    return s * h / 3;
}

PotentialModel free_gas(int dim, int spin)
{
    // A large sphere billiard has V = 0 inside.
    PotentialModel m = sphere_billiard(dim, 100.0);
    m.mass = 1.0;
    m.spin = spin;
    return m;
}

} // namespace

TEST_CASE("TF density closed forms")
{
    PotentialModel m = free_gas(1, 2);
    const double lambda = 2.7;
    CHECK(tf_density(m, lambda, {0.3, 0}) == doctest::Approx(2 / pi * std::sqrt(2 * lambda)).epsilon(1e-14));
    CHECK(tf_kinetic(m, lambda, {0.3, 0}) / tf_density(m, lambda, {0.3, 0}) == doctest::Approx(lambda / 3).epsilon(1e-14));

    // Free-gas momentum sphere: rho = g_s * int_{|k| < k_F} d^3k / (2 pi)^3.
    PotentialModel m3 = free_gas(3, 2);
    const double kf = std::sqrt(2.0);
    const double sphere = 2 * 4 * pi * simpson([](double k) { return k * k; }, 0, kf, 200) / std::pow(2 * pi, 3);
    CHECK(tf_density(m3, 1.0, {0, 0}) == doctest::Approx(sphere).epsilon(1e-13));
    CHECK(tf_density(m3, 1.0, {0, 0}) == doctest::Approx(std::pow(2.0, 1.5) / (3 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("TF densities vanish outside the allowed region")
{
    const PotentialModel q = quartic1d();
    const double lambda = 10.0;
    const double xt = turning_point(q, lambda);
    CHECK(tf_density(q, lambda, {xt, 0}) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(tf_density(q, lambda, {xt * 1.01, 0}) == 0.0);
    CHECK(tf_kinetic(q, lambda, {xt * 1.01, 0}) == 0.0);
    CHECK(tf_density(iho(3), 1.0, {2.0, 0}) == 0.0);
}

TEST_CASE("TF functional reproduces the TF kinetic density")
{
    for (int dim = 1; dim <= 4; ++dim)
        for (int spin = 1; spin <= 2; ++spin) {
            PotentialModel m = iho(dim);
            m.spin = spin;
            for (double r : {0.0, 0.5, 1.7, 3.1}) {
                const double rho = tf_density(m, 5.0, {r, 0});
                CHECK(tf_functional(m, rho) == doctest::Approx(tf_kinetic(m, 5.0, {r, 0})).epsilon(1e-12));
            }
        }
    CHECK(tf_functional(0.0, 3) == 0.0);
    CHECK_THROWS_AS(tf_functional(-1.0, 3), Error);

    // D = 2, g_s = 2: rho = m E / pi hbar^2 and tau = m E^2 / 2 pi hbar^2, so tau = pi hbar^2 rho^2 / 2m.
    CHECK(tf_functional(0.8, 2, 2, 1.0, 1.0) == doctest::Approx(pi * 0.64 / 2).epsilon(1e-13));
    CHECK(tf_functional(0.8, 2, 1, 1.0, 1.0) == doctest::Approx(pi * 0.64).epsilon(1e-13));
}

TEST_CASE("TF functional derivative is the local kinetic energy")
{
    for (int dim = 1; dim <= 3; ++dim) {
        const PotentialModel m = iho(dim);
        const double lambda = 6.0;
        for (double r : {0.0, 1.0, 2.5}) {
            const double rho = tf_density(m, lambda, {r, 0});
            auto diff = [&](double h) { return (tf_functional(m, rho + h) - tf_functional(m, rho - h)) / (2 * h); };
            const double h = 1e-3 * rho;
            const double d = (4 * diff(h / 2) - diff(h)) / 3;
            CHECK(d == doctest::Approx(lambda - 0.5 * r * r).epsilon(1e-8));
        }
    }
}

TEST_CASE("TF normalisation")
{
    // Oscillator: N = g_s (lambda / hbar omega)^3 / 3!.
    const double l3080 = tf_lambda(iho(3), 3080);
    CHECK(l3080 == doctest::Approx(std::cbrt(3.0 * 3080)).epsilon(1e-12));
    CHECK(std::abs(l3080 - 21.0) < 1.0);
    CHECK(tf_particle_number(iho(3), l3080) == doctest::Approx(3080).epsilon(1e-12));

    const PotentialModel box = box1d(2.0);
    CHECK(tf_lambda(box, 40) == doctest::Approx(0.5 * std::pow(40 * pi / 4.0, 2)).epsilon(1e-12));

    // Free Fermi gas in the unit ball, hbar^2 / 2m = 1.
    const PotentialModel ball = sphere_billiard(3, 1.0);
    const double kf = std::cbrt(3 * pi * pi * 1000 / (4 * pi / 3));
    CHECK(tf_lambda(ball, 1000) == doctest::Approx(kf * kf).epsilon(1e-12));

    // Quartic: 2 int sqrt(2(lambda - x^4/4)) dx = 2 b sqrt(2 lambda) B(1/4, 3/2) / 2, b = (4 lambda)^{1/4}.
    PotentialModel q = quartic1d();
    q.spin = 1;
    const double lambda = 50.0;
    const double b = std::pow(4 * lambda, 0.25);
    const double action = b * std::sqrt(2 * lambda) * std::beta(0.25, 1.5);
    CHECK(tf_particle_number(q, lambda) == doctest::Approx(action / (2 * pi)).epsilon(1e-9));

    // Coupled quartic: integrate rho_TF = g_s m (lambda - V) / (2 pi hbar^2) on a polar grid.
    const PotentialModel cq = coupled_quartic(0.6);
    const double lc = 9.0;
    auto ring = [&](double t) {
        const double c = std::cos(t), s = std::sin(t);
        const double f = 0.5 * (std::pow(c, 4) + std::pow(s, 4)) - 0.6 * c * c * s * s;
        const double rt = std::pow(lc / f, 0.25);
        return simpson([&](double r) { return (lc - f * std::pow(r, 4)) * r; }, 0, rt, 200);
    };
    const double numeric = 2 / (2 * pi) * simpson(ring, 0, 2 * pi, 800);
    CHECK(tf_particle_number(cq, lc) == doctest::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("Weyl normalisation of billiards")
{
    // 1D box: states with n < kL/pi, Weyl count g_s (kL/pi - 1/2).
    const PotentialModel box = box1d(1.0);
    const double k = std::sqrt(2 * weyl_lambda(box, 20));
    CHECK(k == doctest::Approx(pi * 10.5).epsilon(1e-12));

    // Rectangle (hbar^2 / 2m = 1): g_s [A k^2 / 4 pi - P k / 4 pi].
    const PotentialModel rect = rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
    const double a = rect.qx * rect.qy, per = 2 * (rect.qx + rect.qy);
    const double kr = std::sqrt(weyl_lambda(rect, 2000));
    CHECK(2 * (a * kr * kr - per * kr) / (4 * pi) == doctest::Approx(2000).epsilon(1e-12));

    // Sphere: g_s [V k^3 / 6 pi^2 - S k^2 / 16 pi].
    const PotentialModel ball = sphere_billiard(3, 1.0);
    const double ks = std::sqrt(weyl_lambda(ball, 100068));
    CHECK(2 * (4 * pi / 3 * std::pow(ks, 3) / (6 * pi * pi) - 4 * pi * ks * ks / (16 * pi)) ==
          doctest::Approx(100068).epsilon(1e-12));

    CHECK(weyl_lambda(iho(2), 30) == doctest::Approx(tf_lambda(iho(2), 30)));
}

TEST_CASE("decomposition")
{
    const PotentialModel m = iho(1);
    const Grid g = line_grid(0, 3, 7);
    const SmoothReference ref = smooth_reference(m, 4.0, g);
    CHECK(ref.kind == SmoothKind::TF);
    CHECK(smooth_reference(box1d(1.0), 4.0, line_grid(0, 1, 3)).kind == SmoothKind::WeylBilliard);

    DensityProfile p;
    p.grid = g;
    p.rho = ref.rho_tf;
    p.tau = ref.tau_tf;
    p.tau1 = ref.tau_tf;
    finish_xi(p);
    const OscillatingParts d = decompose(p, ref);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(d.rho[i] == 0.0);
        CHECK(d.tau[i] == 0.0);
        CHECK(d.tau1[i] == 0.0);
        CHECK(d.xi[i] == 0.0);
    }
    p.rho.pop_back();
    CHECK_THROWS_AS(decompose(p, ref), Error);
}

TEST_CASE("polynomial trend")
{
    const Grid g = line_grid(0, 2, 41);
    std::vector<double> v;
    for (double s : g.coord) v.push_back(1.5 - 0.25 * s * s + std::sin(40 * s) * 1e-3);
    const auto t = polynomial_trend(g.coord, v, 0.0, 2.0, 1, true);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(t[i] == doctest::Approx(1.5 - 0.25 * g.coord[i] * g.coord[i]).epsilon(2e-3));
    std::vector<double> exact;
    for (double s : g.coord) exact.push_back(2 - s + 0.5 * s * s);
    const auto e = polynomial_trend(g.coord, exact, 0.5, 1.5, 2, false);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(e[i] == doctest::Approx(exact[i]).epsilon(1e-12));
    CHECK_THROWS_AS(polynomial_trend(g.coord, v, 0.0, 0.01, 3, false), Error);
}
