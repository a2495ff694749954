#include "scdens/smooth_tf.hpp"

#include "scdens/error.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;

// (g_s/2) (1/Gamma(D/2)) (m / 2 pi hbar^2)^{D/2}
double tf_prefactor(const PotentialModel& m)
{
    const double d = m.dim;
    return 0.5 * m.spin / std::tgamma(0.5 * d) * std::pow(m.mass / (2.0 * pi * m.hbar * m.hbar), 0.5 * d);
}

double unit_ball_volume(int dim) { return std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0); }

// Volume and surface measure of the billiard domain.
std::pair<double, double> billiard_measures(const PotentialModel& m)
{
    switch (m.kind) {
    case SystemKind::Box1D: return {m.length, 2.0};
    case SystemKind::RectBilliard: return {m.qx * m.qy, 2.0 * (m.qx + m.qy)};
    case SystemKind::SphereBilliard:
    case SystemKind::CircleBilliard:
        return {unit_ball_volume(m.dim) * std::pow(m.length, m.dim),
                m.dim * unit_ball_volume(m.dim) * std::pow(m.length, m.dim - 1)};
    default: config_error("Unsupported", "not a billiard");
    }
}

double bisect_increasing(auto&& f, double target, double lo, double hi)
{
    while (f(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) numerical_error("RootNotBracketed", "normalisation root not bracketed");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double tf_density(const PotentialModel& m, double lambda, Point p)
{
    const double e = lambda - evaluate(m, p);
    if (e <= 0.0) return 0.0;
    return 4.0 / m.dim * tf_prefactor(m) * std::pow(e, 0.5 * m.dim);
}

double tf_kinetic(const PotentialModel& m, double lambda, Point p)
{
    const double e = lambda - evaluate(m, p);
    if (e <= 0.0) return 0.0;
    return 4.0 / (m.dim + 2.0) * tf_prefactor(m) * std::pow(e, 0.5 * m.dim + 1.0);
}

double tf_functional(double rho, int dim, int spin, double hbar, double mass)
{
    if (rho < 0.0) numerical_error("NegativeDensity", "TF functional needs rho >= 0");
    const double d = dim;
    const double c = hbar * hbar / (2.0 * mass) * 4.0 * pi * d / (d + 2.0) *
                     std::pow(0.25 * d * std::tgamma(0.5 * d), 2.0 / d);
    return std::pow(2.0 / spin, 2.0 / d) * c * std::pow(rho, 1.0 + 2.0 / d);
}

double tf_functional(const PotentialModel& m, double rho) { return tf_functional(rho, m.dim, m.spin, m.hbar, m.mass); }

double tf_particle_number(const PotentialModel& m, double lambda)
{
    if (lambda <= 0.0) return 0.0;
    if (is_billiard(m)) return billiard_measures(m).first * tf_density(m, lambda, {0.0, 0.0});
    switch (m.kind) {
    case SystemKind::IHO: {
        double fact = 1.0;
        for (int i = 2; i <= m.dim; ++i) fact *= i;
        return m.spin * std::pow(lambda / (m.hbar * m.omega), m.dim) / fact;
    }
    case SystemKind::Quartic1D: return m.spin * full_period(m, lambda).action / (2.0 * pi * m.hbar);
    case SystemKind::CoupledQuartic2D: {
        // Radial integral of (lambda - r^4 f(theta)) r dr done in closed form.
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        const double kappa = m.kappa;
        const double angular = GK::integrate(
            [kappa](double t) {
                const double c = std::cos(t), s = std::sin(t);
                const double f = 0.5 * (c * c * c * c + s * s * s * s) - kappa * c * c * s * s;
                return 1.0 / (3.0 * std::sqrt(f));
            },
            0.0, 2.0 * pi, 15, 1e-14);
        return 2.0 * tf_prefactor(m) * angular * std::pow(lambda, 1.5);
    }
    default: config_error("Unsupported", "TF particle number undefined for " + system_name(m.kind));
    }
}

double tf_lambda(const PotentialModel& m, double particles)
{
    if (!(particles > 0.0)) config_error("InvalidParticleNumber", "N must be positive");
    return bisect_increasing([&](double l) { return tf_particle_number(m, l); }, particles, 0.0, 1.0);
}

double weyl_particle_number(const PotentialModel& m, double lambda)
{
    if (!is_billiard(m)) return tf_particle_number(m, lambda);
    if (lambda <= 0.0) return 0.0;
    const auto [vol, area] = billiard_measures(m);
    const double k = std::sqrt(2.0 * m.mass * lambda) / m.hbar;
    const int d = m.dim;
    const double volume_term = vol * unit_ball_volume(d) * std::pow(k, d) / std::pow(2.0 * pi, d);
    const double surface_term = area * unit_ball_volume(d - 1) * std::pow(k, d - 1) / (4.0 * std::pow(2.0 * pi, d - 1));
    return m.spin * (volume_term - surface_term);
}

double weyl_lambda(const PotentialModel& m, double particles)
{
    if (!(particles > 0.0)) config_error("InvalidParticleNumber", "N must be positive");
    if (!is_billiard(m)) return tf_lambda(m, particles);
    // The surface term makes the count negative at small k; start at its zero,
    // beyond which it increases monotonically.
    const auto [vol, area] = billiard_measures(m);
    const double k0 = 2.0 * pi * area * unit_ball_volume(m.dim - 1) / (4.0 * vol * unit_ball_volume(m.dim));
    const double lo = std::pow(m.hbar * k0, 2.0) / (2.0 * m.mass);
    return bisect_increasing([&](double l) { return weyl_particle_number(m, l); }, particles, lo, 2.0 * lo + 1.0);
}

SmoothReference smooth_reference(const PotentialModel& m, double lambda, const Grid& grid)
{
    SmoothReference ref;
    ref.kind = is_billiard(m) ? SmoothKind::WeylBilliard : SmoothKind::TF;
    ref.lambda = lambda;
    ref.rho_tf.resize(grid.size());
    ref.tau_tf.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ref.rho_tf[i] = tf_density(m, lambda, grid.points[i]);
        ref.tau_tf[i] = tf_kinetic(m, lambda, grid.points[i]);
    }
    return ref;
}

OscillatingParts decompose(const DensityProfile& p, const SmoothReference& ref)
{
    const std::size_t n = p.rho.size();
    if (ref.rho_tf.size() != n || p.tau.size() != n || p.tau1.size() != n)
        mismatch_error("GridMismatch", "profile and smooth reference differ in length");
    OscillatingParts out;
    out.reference = ref.kind;
    out.rho.resize(n);
    out.tau.resize(n);
    out.tau1.resize(n);
    out.xi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.rho[i] = p.rho[i] - ref.rho_tf[i];
        out.tau[i] = p.tau[i] - ref.tau_tf[i];
        out.tau1[i] = p.tau1[i] - ref.tau_tf[i];
        out.xi[i] = 0.5 * (out.tau[i] + out.tau1[i]);
    }
    return out;
}

std::vector<double> polynomial_trend(const std::vector<double>& coord, const std::vector<double>& values,
                                     double fit_lo, double fit_hi, int degree, bool even)
{
    if (coord.size() != values.size()) mismatch_error("GridMismatch", "trend input lengths differ");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < coord.size(); ++i)
        if (coord[i] >= fit_lo && coord[i] <= fit_hi) rows.push_back(i);
    if (static_cast<int>(rows.size()) <= degree) config_error("InvalidWindow", "too few points for the trend fit");
    const double scale = std::max(std::abs(fit_lo), std::abs(fit_hi));
    auto basis = [&](double s, int j) {
        const double t = s / scale;
        return std::pow(even ? t * t : t, j);
    };
    Eigen::MatrixXd a(rows.size(), degree + 1);
    Eigen::VectorXd b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int j = 0; j <= degree; ++j) a(r, j) = basis(coord[rows[r]], j);
        b(r) = values[rows[r]];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    std::vector<double> trend(coord.size());
    for (std::size_t i = 0; i < coord.size(); ++i) {
        double v = 0.0;
        for (int j = 0; j <= degree; ++j) v += c(j) * basis(coord[i], j);
        trend[i] = v;
    }
    return trend;
}

} // namespace scdens
