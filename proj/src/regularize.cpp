#include "scdens/regularize.hpp"

#include "scdens/error.hpp"
#include "scdens/smooth_tf.hpp"
#include "scdens/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;
using GK = boost::math::quadrature::gauss_kronrod<double, 21>;

void require_smooth(const PotentialModel& m)
{
    if (is_billiard(m)) config_error("Unsupported", "Airy forms need a smooth potential");
}

} // namespace

double center_bessel(const PotentialModel& m, double lambda, double t_r1, int shells, double r)
{
    if (!(t_r1 > 0.0)) config_error("InvalidArgument", "period must be positive");
    if (shells < 1) config_error("InvalidArgument", "need at least one filled shell");
    const double nu = 0.5 * m.dim - 1.0;
    const double p = std::sqrt(2.0 * m.mass * lambda);
    const double z = 2.0 * std::abs(r) * p / m.hbar;
    const double sign = (shells - 1) % 2 == 0 ? 1.0 : -1.0;
    // (p / 4 pi hbar r)^nu J_nu(z) = (p^2 / 2 pi hbar^2)^nu J_nu(z) / z^nu
    return 0.5 * m.spin * sign * m.mass / (m.hbar * t_r1) * std::pow(p * p / (2.0 * pi * m.hbar * m.hbar), nu) *
           bessel_j_scaled(nu, z);
}

double center_bessel(const PotentialModel& m, double lambda, int shells, double r)
{
    return center_bessel(m, lambda, full_period(m, lambda).period, shells, r);
}

TurningPointLinearization linearize(const PotentialModel& m, double lambda)
{
    require_smooth(m);
    TurningPointLinearization t;
    t.turning_point = turning_point(m, lambda);
    t.slope = profile_slope(m, t.turning_point);
    if (!(t.slope > 0.0)) numerical_error("SlopeNonpositive", "potential slope at the turning point must be positive");
    t.sigma = std::cbrt(2.0 * m.mass * t.slope / (m.hbar * m.hbar));
    t.rho0 = 2.0 * t.sigma;
    return t;
}

double uniform_argument(const PotentialModel& m, double lambda, double s)
{
    require_smooth(m);
    const double xl = turning_point(m, lambda);
    const double x = m.kind == SystemKind::Linear1D ? s : std::abs(s);
    if (x <= xl) {
        const auto plus = radial_orbit(m, lambda, x, OrbitSign::Plus, 0);
        return -std::pow(0.75 * plus->action / m.hbar, 2.0 / 3.0);
    }
    // Under-barrier action with u^2 = x' - x_lambda to remove the square-root end point.
    const double umax = std::sqrt(x - xl);
    const double q = GK::integrate(
        [&](double u) {
            const double v = profile_potential(m, xl + u * u) - lambda;
            return 2.0 * u * std::sqrt(2.0 * m.mass * std::max(0.0, v));
        },
        0.0, umax, 10, 1e-13);
    return std::pow(0.75 * 2.0 * q / m.hbar, 2.0 / 3.0);
}

AiryDensities airy_linear(double a, double z, const PotentialModel& m)
{
    const AiryPair ai = airy(z);
    const double a2 = ai.ai * ai.ai, d2 = ai.aip * ai.aip, ad = ai.ai * ai.aip;
    const double sigma = std::cbrt(2.0 * m.mass * a / (m.hbar * m.hbar));
    const double g = m.spin;
    const double inside = z < 0.0 ? 1.0 : 0.0;
    const double w = std::pow(std::abs(z), 1.5);
    AiryDensities out;
    if (m.dim == 1) {
        out.rho = g * sigma * (d2 - z * a2);
        out.tau = g * a / 3.0 * (z * z * a2 - z * d2 + ad);
        out.xi = -g * a / 6.0 * (ad + 2.0 * z * d2 - 2.0 * z * z * a2);
        out.drho = out.rho - g * sigma / pi * std::sqrt(std::abs(z)) * inside;
        out.dtau = out.tau - g * a / (3.0 * pi) * w * inside;
        out.dxi = out.xi - g * a / (3.0 * pi) * w * inside;
        return out;
    }
    if (m.dim != 3) config_error("UnsupportedDimension", "the radial Airy density is available for D = 3 only");
    const double rho0 = 2.0 * sigma;
    const double c = 0.5 * g * std::pow(rho0, 3) / (48.0 * pi);
    out.rho = -c * (ad + 2.0 * z * d2 - 2.0 * z * z * a2);
    out.drho = out.rho - c * 2.0 / pi * w * inside;
    return out;
}

AiryDensities airy_uniform_1d(const PotentialModel& m, double lambda, double x)
{
    if (!is_one_dimensional(m)) config_error("Unsupported", "airy_uniform_1d needs a 1D system");
    const TurningPointLinearization t = linearize(m, lambda);
    return airy_linear(t.slope, uniform_argument(m, lambda, x), m);
}

AiryDensities airy_uniform_radial(const PotentialModel& m, double lambda, double r)
{
    if (m.dim != 3 || !is_radial(m))
        config_error("UnsupportedDimension", "the radial Airy density is available for D = 3 only");
    const TurningPointLinearization t = linearize(m, lambda);
    return airy_linear(t.slope, uniform_argument(m, lambda, r), m);
}

double boundary_friedel_2d(double p, double d, double rc, double hbar, int spin)
{
    if (d < 0.0) config_error("InvalidArgument", "distance to the wall must be >= 0");
    const double curv = std::isinf(rc) ? 1.0 : 1.0 - d / rc;
    if (!(curv > 0.0)) numerical_error("CurvatureDomain", "1 - d/R must be positive");
    // J_1(z) / d = (2 p / hbar) J_1(z) / z
    const double z = 2.0 * d * p / hbar;
    return -0.5 * spin * p * (2.0 * p / hbar) * bessel_j_scaled(1.0, z) / (2.0 * pi * hbar * std::sqrt(curv));
}

double boundary_friedel_sphere(const PotentialModel& m, double lambda, double r)
{
    if (m.kind != SystemKind::SphereBilliard && m.kind != SystemKind::CircleBilliard && m.kind != SystemKind::Box1D)
        config_error("Unsupported", "boundary_friedel_sphere needs a spherical billiard");
    const double big_r = m.kind == SystemKind::Box1D ? 0.5 * m.length : m.length;
    const double s = m.kind == SystemKind::Box1D ? std::abs(r - big_r) : std::abs(r);
    if (s > big_r * (1 + 1e-14)) config_error("PointOutsideBilliard", "point outside the sphere");
    const double nu = 0.5 * m.dim;
    const double p = std::sqrt(2.0 * m.mass * lambda);
    const double z = 2.0 * (big_r - s) * p / m.hbar;
    const double rho_tf = tf_density(m, lambda, {0.0, 0.0});
    const double geometric = std::pow(big_r / s, nu - 0.5);
    return -rho_tf * std::pow(2.0, nu) * std::tgamma(nu + 1.0) * geometric * bessel_j_scaled(nu, z);
}

double weyl_surface_term(const PotentialModel& m, double lambda)
{
    const double d = m.dim;
    const double big_r = m.kind == SystemKind::Box1D ? 0.5 * m.length : m.length;
    const double p = std::sqrt(2.0 * m.mass * lambda);
    const double area = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d) * std::pow(big_r, d - 1);
    return -0.5 * m.spin / (2.0 * std::pow(pi, 0.5 * d) * std::pow(m.hbar, d - 1)) * std::tgamma(0.5 * d) /
           std::tgamma(d) * std::pow(p, d - 1) * area;
}

double boundary_friedel_particle_number(const PotentialModel& m, double lambda)
{
    const double big_r = m.kind == SystemKind::Box1D ? 0.5 * m.length : m.length;
    const double d = m.dim;
    const double shell = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
    const double p = std::sqrt(2.0 * m.mass * lambda);
    // Panels of about half a Friedel wavelength.
    const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * big_r * p / (pi * m.hbar))));
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = big_r * i / panels, hi = big_r * (i + 1) / panels;
        total += GK::integrate(
            [&](double r) {
                if (r == 0.0) return 0.0;
                return shell * std::pow(r, d - 1) * boundary_friedel_sphere(m, lambda, r);
            },
            lo, hi, 0, 1e-12);
    }
    // The box integrand is symmetric about the centre; only one half was covered.
    return m.kind == SystemKind::Box1D ? 2.0 * total / shell : total;
}

} // namespace scdens
