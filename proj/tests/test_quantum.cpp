#include <doctest.h>

#include "scdens/error.hpp"
#include "scdens/quantum.hpp"
#include "scdens/smooth_tf.hpp"

#include <boost/math/special_functions/airy.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace scdens;
using std::numbers::pi;

namespace {

// Eigenvalues of the second-order finite-difference Hamiltonian on [-L, L]
// by Sturm-sequence bisection.
std::vector<double> fd_levels(double (*V)(double), double L, double h, int count)
{
    const int n = static_cast<int>(2 * L / h) - 1;
    std::vector<double> diag(n);
    const double off = -0.5 / (h * h);
    for (int i = 0; i < n; ++i) diag[i] = 1.0 / (h * h) + V(-L + (i + 1) * h);
    auto below = [&](double e) {
        int c = 0;
        double q = diag[0] - e;
        if (q < 0) ++c;
        for (int i = 1; i < n; ++i) {
            q = diag[i] - e - off * off / (q == 0 ? 1e-300 : q);
            if (q < 0) ++c;
        }
        return c;
    };
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        double lo = 0, hi = 1;
        while (below(hi) <= k) hi *= 2;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (below(mid) <= k ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

double quartic_v(double x) { return 0.25 * x * x * x * x; }

double simpson(const std::vector<double>& f, double h)
{
    const std::size_t n = f.size();
    double s = f.front() + f.back();
    for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4 : 2) * f[i];
    return s * h / 3;
}

// Integral of rho over the domain, from a radial or 1D profile.
double radial_integral(const PotentialModel& m, int particles, double rmax, int points)
{
    const Grid g = line_grid(0, rmax, points);
    const DensityProfile p = densities(m, particles, g);
    std::vector<double> f(points);
    const double area = 2 * std::pow(pi, 0.5 * m.dim) / std::tgamma(0.5 * m.dim);
    for (int i = 0; i < points; ++i) f[i] = area * std::pow(g.coord[i], m.dim - 1) * p.rho[i];
    return simpson(f, rmax / (points - 1));
}

// tau1 - tau - (hbar^2/4m) lap(rho) at a point from five-point stencils along
// the requested Cartesian axes.
double laplace_residual(const PotentialModel& m, int particles, Point p, double h, bool two_d)
{
    Grid g;
    const double off[5] = {-2 * h, -h, 0, h, 2 * h};
    for (double d : off) {
        g.coord.push_back(d);
        g.points.push_back({p.x + d, p.y});
    }
    if (two_d)
        for (double d : off) {
            g.coord.push_back(d);
            g.points.push_back({p.x, p.y + d});
        }
    const DensityProfile q = densities(m, particles, g);
    auto second = [&](int o) {
        return (-q.rho[o] + 16 * q.rho[o + 1] - 30 * q.rho[o + 2] + 16 * q.rho[o + 3] - q.rho[o + 4]) / (12 * h * h);
    };
    const double lap = second(0) + (two_d ? second(5) : 0.0);
    return q.tau1[2] - q.tau[2] - m.hbar * m.hbar / (4 * m.mass) * lap;
}

// Radial Laplacian rho'' + (D-1) rho' / r.
double radial_laplace_residual(const PotentialModel& m, int particles, double r, double h)
{
    const Grid g = line_grid(r - 2 * h, r + 2 * h, 5);
    const DensityProfile q = densities(m, particles, g);
    const auto& f = q.rho;
    const double d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
    const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
    return q.tau1[2] - q.tau[2] - m.hbar * m.hbar / (4 * m.mass) * (d2 + (m.dim - 1) * d1 / r);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

} // namespace

TEST_CASE("analytic spectra")
{
    const SpectrumTable box = spectrum(box1d(pi), 2);
    CHECK(box[0].energy == doctest::Approx(0.5));
    CHECK(box[1].energy == doctest::Approx(2.0));

    const SpectrumTable osc = spectrum(iho(3), 4);
    for (int n = 0; n < 4; ++n) {
        CHECK(osc[n].energy == doctest::Approx(n + 1.5));
        CHECK(osc[n].degeneracy == (n + 1) * (n + 2) / 2);
    }

    const PotentialModel rect = rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
    const SpectrumTable r = spectrum(rect, 30);
    for (const auto& l : r) {
        const double e = pi * pi * (std::pow(l.qn[0] / rect.qx, 2) + std::pow(l.qn[1] / rect.qy, 2));
        CHECK(l.energy == doctest::Approx(e).epsilon(1e-14));
    }
    CHECK(std::is_sorted(r.begin(), r.end(), [](auto& a, auto& b) { return a.energy < b.energy; }));

    // Unit ball: the lowest levels are squared zeros of j_0, j_1, j_2, with the
    // (2l+1)-fold angular degeneracy.
    const SpectrumTable s = spectrum(sphere_billiard(3, 1.0), 3);
    CHECK(s[0].energy == doctest::Approx(pi * pi).epsilon(1e-12));
    CHECK(s[0].degeneracy == 1);
    CHECK(s[1].energy == doctest::Approx(std::pow(4.493409457909064, 2)).epsilon(1e-12));
    CHECK(s[1].degeneracy == 3);
    CHECK(s[2].energy == doctest::Approx(std::pow(5.763459196894550, 2)).epsilon(1e-12));
    CHECK(s[2].degeneracy == 5);

    const SpectrumTable c = spectrum(circle_billiard(1.0), 2);
    CHECK(c[0].energy == doctest::Approx(std::pow(2.404825557695773, 2)).epsilon(1e-12));
    CHECK(c[1].energy == doctest::Approx(std::pow(3.831705970207512, 2)).epsilon(1e-12));
    CHECK(c[1].degeneracy == 2);
}

TEST_CASE("quartic spectrum against a finite-difference solver")
{
    const SpectrumTable q = spectrum(quartic1d(), 40);
    const auto coarse = fd_levels(quartic_v, 8.0, 0.004, 40);
    const auto fine = fd_levels(quartic_v, 8.0, 0.002, 40);
    for (int i = 0; i < 40; ++i) {
        const double oracle = (4 * fine[i] - coarse[i]) / 3;
        CHECK(q[i].energy == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("coupled quartic spectrum is stable under basis growth")
{
    // At kappa = 0 the potential separates into two x^4/2 oscillators.
    PotentialModel sep = coupled_quartic(0.0);
    const SpectrumTable s = spectrum(sep, 12);
    PotentialModel one = quartic1d();
    const SpectrumTable q = spectrum(one, 6);
    // x^4/2 = 2^{1/3} scaled x^4/4 levels.
    std::vector<double> sums;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) sums.push_back(std::cbrt(2.0) * (q[i].energy + q[j].energy));
    std::sort(sums.begin(), sums.end());
    for (int i = 0; i < 12; ++i) CHECK(s[i].energy == doctest::Approx(sums[i]).epsilon(1e-9));

    const PotentialModel cq = coupled_quartic(0.6);
    const SpectrumTable a = spectrum(cq, 40);
    const SpectrumTable b = spectrum(cq, 160);
    for (int i = 0; i < 40; ++i) CHECK(a[i].energy == doctest::Approx(b[i].energy).epsilon(1e-8));
}

TEST_CASE("closed shells")
{
    CHECK(closed_shell_N(iho(3), 40) == 22960);
    CHECK(closed_shell_N(iho(3), 20) == 3080);
    CHECK(closed_shell_N(iho(4), 51) == 632502);
    CHECK_THROWS_AS(closed_shell_N(box1d(1.0), 3), Error);

    const FermiData f = fermi(iho(3), 3080);
    CHECK(f.lambda_smooth == doctest::Approx(21.0));
    CHECK(f.lambda == doctest::Approx(20.5));
    CHECK(f.delta_lambda == doctest::Approx(-0.5));

    const FermiData f4 = fermi(iho(4), 632502);
    CHECK(f4.lambda == doctest::Approx(52.0));

    const FermiData b = fermi(box1d(pi), 2);
    CHECK(b.lambda == doctest::Approx(0.5));
    CHECK(b.filled_levels == 1);
}

TEST_CASE("fermi rejects open shells")
{
    CHECK_THROWS_AS(fermi(box1d(1.0), 3), Error);
    try {
        fermi(box1d(1.0), 3);
    } catch (const Error& e) {
        CHECK(e.error_class() == ErrorClass::Config);
        CHECK(std::string(e.what()).find("closed shell") != std::string::npos);
    }
    CHECK_THROWS_AS(fermi(iho(3), 10), Error);
    CHECK_NOTHROW(fermi(iho(3), 8));
    // Single spin species: odd N fills single levels.
    PotentialModel q = quartic1d();
    q.spin = 1;
    CHECK(fermi(q, 39).filled_levels == 39);
}

TEST_CASE("sphere billiard filling for N = 100068")
{
    const PotentialModel s = sphere_billiard(3, 1.0);
    const FermiData f = fermi(s, 100068);

    // Count states below the Weyl Fermi energy from sign changes of j_l.
    const double k = std::sqrt(f.lambda_smooth);
    long long states = 0;
    int distinct_near = 0;
    for (int l = 0; l < static_cast<int>(k) + 2; ++l) {
        double prev = std::sph_bessel(l, 1e-3);
        const double step = 1e-3;
        for (double x = 2e-3; x < k + 10; x += step) {
            const double cur = std::sph_bessel(l, x);
            if (prev * cur < 0) {
                if (x < k) states += 2 * (2 * l + 1);
                if (std::abs(x * x - f.lambda) < 100) ++distinct_near;
            }
            prev = cur;
        }
    }
    CHECK(states == 100068);
    const double spacing = 200.0 / distinct_near;
    CHECK(std::abs(f.lambda - f.lambda_smooth) < spacing);
}

TEST_CASE("trivial densities")
{
    const DensityProfile b = densities(box1d(2.0), 2, line_grid(1.0, 1.0, 1));
    CHECK(b.rho[0] == doctest::Approx(4 / 2.0));
    const DensityProfile o = densities(iho(1), 2, line_grid(0, 0, 1));
    CHECK(o.rho[0] == doctest::Approx(2 / std::sqrt(pi)));
    CHECK(o.tau1[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(o.xi[0] == doctest::Approx(0.5 * (o.tau[0] + o.tau1[0])));
}

TEST_CASE("normalisation")
{
    CHECK(radial_integral(iho(1), 40, 12, 2001) == doctest::Approx(40).epsilon(1e-3));
    CHECK(radial_integral(iho(2), 110, 12, 2001) == doctest::Approx(110).epsilon(1e-3));
    CHECK(radial_integral(iho(3), 3080, 14, 4001) == doctest::Approx(3080).epsilon(1e-3));
    CHECK(radial_integral(sphere_billiard(3, 1.0), 100068, 1.0, 4001) == doctest::Approx(100068).epsilon(1e-3));
    {
        const SpectrumTable c = spectrum(circle_billiard(1.0), 60);
        int n = 0;
        for (const auto& l : c) n += 2 * l.degeneracy;
        CHECK(radial_integral(circle_billiard(1.0), n, 1.0, 4001) == doctest::Approx(n).epsilon(1e-3));
    }

    {
        const PotentialModel q = [] { auto m = quartic1d(); m.spin = 1; return m; }();
        const Grid g = line_grid(-8, 8, 4001);
        CHECK(simpson(densities(q, 40, g).rho, 16.0 / 4000) == doctest::Approx(40).epsilon(1e-3));
    }
    {
        const Grid g = line_grid(0, 1, 2001);
        CHECK(simpson(densities(box1d(1.0), 100, g).rho, 1.0 / 2000) == doctest::Approx(100).epsilon(1e-3));
    }
    {
        // 2D: nested Simpson over the rectangle.
        const PotentialModel rect = rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
        const int n = 201;
        std::vector<double> rows;
        for (int j = 0; j < n; ++j) {
            const double y = rect.qy * j / (n - 1);
            rows.push_back(simpson(densities(rect, 200, cut_grid({Cut::Kind::AlongX, y}, 0, rect.qx, n)).rho,
                                   rect.qx / (n - 1)));
        }
        CHECK(simpson(rows, rect.qy / (n - 1)) == doctest::Approx(200).epsilon(1e-3));
    }
    {
        const PotentialModel cq = coupled_quartic(0.6);
        const int n = 161;
        const double ext = 4.5;
        std::vector<double> rows;
        for (int j = 0; j < n; ++j) {
            const double y = -ext + 2 * ext * j / (n - 1);
            rows.push_back(simpson(densities(cq, 42, cut_grid({Cut::Kind::AlongX, y}, -ext, ext, n)).rho,
                                   2 * ext / (n - 1)));
        }
        CHECK(simpson(rows, 2 * ext / (n - 1)) == doctest::Approx(42).epsilon(1e-3));
    }
}

TEST_CASE("kinetic densities obey the Laplacian relation")
{
    {
        const PotentialModel b = box1d(1.0);
        const double scale = max_of(densities(b, 40, line_grid(0, 1, 401)).tau1);
        for (double x : {0.13, 0.5, 0.77}) CHECK(std::abs(laplace_residual(b, 40, {x, 0}, 1e-3, false)) < 1e-4 * scale);
    }
    {
        PotentialModel q = quartic1d();
        q.spin = 1;
        const double scale = max_of(densities(q, 40, line_grid(0, 5, 401)).tau1);
        for (double x : {0.0, 1.3, 3.2, 4.6})
            CHECK(std::abs(laplace_residual(q, 40, {x, 0}, 2e-3, false)) < 1e-4 * scale);
    }
    for (int dim = 2; dim <= 4; ++dim) {
        const PotentialModel m = iho(dim);
        const int n = static_cast<int>(closed_shell_N(m, 8));
        const double scale = max_of(densities(m, n, line_grid(0, 5, 201)).tau1);
        for (double r : {0.4, 1.7, 3.5}) CHECK(std::abs(radial_laplace_residual(m, n, r, 2e-3)) < 1e-4 * scale);
    }
    {
        const PotentialModel s = sphere_billiard(3, 1.0);
        const double scale = max_of(densities(s, 100068, line_grid(0, 1, 401)).tau1);
        for (double r : {0.2, 0.55, 0.9}) CHECK(std::abs(radial_laplace_residual(s, 100068, r, 2e-4)) < 1e-4 * scale);
    }
    {
        const PotentialModel rect = rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
        const double scale = max_of(densities(rect, 200, cut_grid({Cut::Kind::AlongX, 0.5}, 0, rect.qx, 201)).tau1);
        CHECK(std::abs(laplace_residual(rect, 200, {0.41, 0.63}, 1e-3, true)) < 1e-4 * scale);
    }
    {
        const PotentialModel cq = coupled_quartic(0.6);
        const double scale = max_of(densities(cq, 42, cut_grid({Cut::Kind::Ray, 1 / std::sqrt(3.0)}, 0, 3, 201)).tau1);
        for (Point p : {Point{0.3, 0.2}, Point{1.1, -0.7}})
            CHECK(std::abs(laplace_residual(cq, 42, p, 2e-3, true)) < 1e-4 * scale);
    }
}

TEST_CASE("densities are non-negative and vanish on billiard walls")
{
    const DensityProfile s = densities(sphere_billiard(3, 1.0), 100068, line_grid(0, 1, 301));
    for (std::size_t i = 0; i < s.rho.size(); ++i) {
        CHECK(s.rho[i] >= 0.0);
        CHECK(s.tau1[i] >= 0.0);
    }
    CHECK(s.rho.back() < 1e-9 * max_of(s.rho));
    const DensityProfile b = densities(box1d(1.0), 20, line_grid(0, 1, 11));
    CHECK(b.rho.front() < 1e-12);
    CHECK(b.rho.back() < 1e-12);
    CHECK_THROWS_AS(densities(box1d(1.0), 20, line_grid(0, 1.5, 11)), Error);
    CHECK_THROWS_AS(densities(linear1d(1.0), 2, line_grid(0, 1, 3)), Error);
}

TEST_CASE("serial and parallel evaluation agree")
{
    const Grid g = line_grid(0, 6, 97);
    const DensityProfile a = densities(iho(3), 3080, g, Exec::Serial);
    const DensityProfile b = densities(iho(3), 3080, g, Exec::Parallel);
    CHECK(a.rho == b.rho);
    CHECK(a.tau == b.tau);
    CHECK(a.tau1 == b.tau1);
}

TEST_CASE("TF subtraction: box interior symmetric, oscillator interior offset")
{
    const PotentialModel b = box1d(1.0);
    const Grid gb = line_grid(0.1, 0.9, 801);
    const DensityProfile pb = densities(b, 200, gb);
    const OscillatingParts db = decompose(pb, smooth_reference(b, pb.lambda_smooth, gb));
    double mean = 0, amp = 0;
    for (double v : db.rho) {
        mean += v / db.rho.size();
        amp = std::max(amp, std::abs(v));
    }
    CHECK(std::abs(mean) < 0.01 * amp);

    const PotentialModel m = iho(3);
    const FermiData f = fermi(m, 22960);
    const double rl = std::sqrt(2 * f.lambda_smooth);
    const Grid gi = line_grid(0.3 * rl, 0.7 * rl, 801);
    const DensityProfile pi_ = densities(m, 22960, gi);
    const OscillatingParts di = decompose(pi_, smooth_reference(m, f.lambda_smooth, gi));
    double imean = 0, iamp = 0;
    for (double v : di.rho) {
        imean += v / di.rho.size();
        iamp = std::max(iamp, std::abs(v));
    }
    CHECK(std::abs(imean) > 0.1 * iamp);
}

TEST_CASE("linear ramp continuum densities")
{
    PotentialModel m = linear1d(1.3);
    const double lambda = 2.0;
    const Grid g = line_grid(-3.0, 3.0, 61);
    const DensityProfile p = linear_ramp_densities(m, lambda, g);
    const double sigma = std::cbrt(2 * m.mass * m.slope / (m.hbar * m.hbar));
    // Deep inside the allowed region the density approaches rho_TF.
    CHECK(p.rho.front() == doctest::Approx(tf_density(m, lambda, g.points.front())).epsilon(0.03));
    // rho = g_s sigma int_z^inf Ai^2, checked by quadrature of Boost Ai^2.
    const double x = 0.7;
    const double z0 = sigma * (x - lambda / m.slope);
    std::vector<double> f;
    const int n = 4000;
    const double zmax = 12.0;
    for (int i = 0; i <= n; ++i) {
        const double ai = boost::math::airy_ai(z0 + (zmax - z0) * i / n);
        f.push_back(ai * ai);
    }
    const double rho = 2 * sigma * simpson(f, (zmax - z0) / n);
    CHECK(linear_ramp_densities(m, lambda, line_grid(x, x, 1)).rho[0] == doctest::Approx(rho).epsilon(1e-9));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(p.xi[i] == doctest::Approx(0.5 * (p.tau[i] + p.tau1[i])));
}

TEST_CASE("hot densities")
{
    const Grid g = line_grid(0.05, 0.95, 19);
    const PotentialModel b = box1d(1.0);
    const DensityProfile cold = densities(b, 20, g);
    const DensityProfile t0 = hot_densities(b, 20, 0.0, g);
    CHECK(t0.rho == cold.rho);
    const DensityProfile tiny = hot_densities(b, 20, 1e-4, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(tiny.rho[i] - cold.rho[i]) < 1e-6);

    // High temperature: direct sine sum with an own chemical potential.
    const double temp = 2000.0;
    const DensityProfile hot = hot_densities(b, 20, temp, g);
    auto occupation = [&](double mu, int n) { return 1 / (1 + std::exp((0.5 * pi * pi * n * n - mu) / temp)); };
    double lo = -1e5, hi = 1e5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double count = 0;
        for (int n = 1; n < 400; ++n) count += 2 * occupation(mid, n);
        (count < 20 ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    CHECK(hot.lambda == doctest::Approx(mu).epsilon(1e-8));
    CHECK(hot.truncation_bound < 1e-12);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double rho = 0;
        for (int n = 1; n < 400; ++n) rho += 2 * occupation(mu, n) * 2 * std::pow(std::sin(n * pi * g.coord[i]), 2);
        CHECK(hot.rho[i] == doctest::Approx(rho).epsilon(1e-8));
    }
    for (std::size_t i = 3; i + 3 < g.size(); ++i) CHECK(hot.rho[i] == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("oscillator ground-state occupation at finite temperature")
{
    const PotentialModel m = iho(1);
    const double temp = 0.1;
    const SpectrumTable levels = spectrum(m, 40);
    const double mu = solve_chemical_potential(levels, 2, 2.0, temp);
    // Oracle: bisection on 2 sum nu_n = 2 with E_n = n + 1/2.
    double lo = 0, hi = 2;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double count = 0;
        for (int n = 0; n < 40; ++n) count += 2 / (1 + std::exp((n + 0.5 - mid) / temp));
        (count < 2 ? lo : hi) = mid;
    }
    CHECK(mu == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
    const double nu1 = fermi_occupations(levels, mu, temp)[0];
    CHECK(nu1 == doctest::Approx(1 / (1 + std::exp((0.5 - 0.5 * (lo + hi)) / temp))).epsilon(1e-9));

    // rho(0) = 2 sum nu_n |phi_n(0)|^2 with |phi_{2j}(0)|^2 = (2j)! / (sqrt(pi) 4^j (j!)^2).
    const DensityProfile p = hot_densities(m, 2, temp, line_grid(0, 0, 1));
    const auto occ = fermi_occupations(levels, mu, temp);
    double rho0 = 0;
    for (int j = 0; 2 * j < 40; ++j)
        rho0 += 2 * occ[2 * j] * std::exp(std::lgamma(2 * j + 1) - 2 * std::lgamma(j + 1) - j * std::log(4.0)) / std::sqrt(pi);
    CHECK(p.rho[0] == doctest::Approx(rho0).epsilon(1e-10));

    CHECK_THROWS_AS(solve_chemical_potential(levels, 2, 2.0, -1.0), Error);
    CHECK_THROWS_AS(solve_chemical_potential(levels, 2, 1e6, 0.1), Error);
}
