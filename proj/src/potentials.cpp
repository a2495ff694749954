#include "scdens/potentials.hpp"

#include "scdens/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;

double radius_of(Point p) { return std::hypot(p.x, p.y); }

// (V(s) - V(t)) / (s - t) along the 1D/radial profile, free of cancellation.
double divided_difference(const PotentialModel& m, double s, double t)
{
    switch (m.kind) {
    case SystemKind::Quartic1D: return 0.25 * (s + t) * (s * s + t * t);
    case SystemKind::Linear1D: return m.slope;
    case SystemKind::IHO: return 0.5 * m.mass * m.omega * m.omega * (s + t);
    case SystemKind::CoupledQuartic2D: return 0.5 * (s + t) * (s * s + t * t);
    default: return 0.0;
    }
}

} // namespace

PotentialModel box1d(double length)
{
    PotentialModel m;
    m.kind = SystemKind::Box1D;
    m.length = length;
    validate(m);
    return m;
}

PotentialModel quartic1d()
{
    PotentialModel m;
    m.kind = SystemKind::Quartic1D;
    return m;
}

PotentialModel linear1d(double slope)
{
    PotentialModel m;
    m.kind = SystemKind::Linear1D;
    m.slope = slope;
    validate(m);
    return m;
}

PotentialModel iho(int dim, double omega)
{
    PotentialModel m;
    m.kind = SystemKind::IHO;
    m.dim = dim;
    m.omega = omega;
    validate(m);
    return m;
}

PotentialModel rect_billiard(double qx, double qy)
{
    PotentialModel m;
    m.kind = SystemKind::RectBilliard;
    m.dim = 2;
    m.qx = qx;
    m.qy = qy;
    m.mass = 0.5;
    validate(m);
    return m;
}

PotentialModel sphere_billiard(int dim, double radius)
{
    PotentialModel m;
    m.kind = SystemKind::SphereBilliard;
    m.dim = dim;
    m.length = radius;
    m.mass = 0.5;
    validate(m);
    return m;
}

PotentialModel circle_billiard(double radius)
{
    PotentialModel m = sphere_billiard(2, radius);
    m.kind = SystemKind::CircleBilliard;
    return m;
}

PotentialModel coupled_quartic(double kappa)
{
    PotentialModel m;
    m.kind = SystemKind::CoupledQuartic2D;
    m.dim = 2;
    m.kappa = kappa;
    validate(m);
    return m;
}

void validate(const PotentialModel& m)
{
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) config_error("InvalidModel", std::string(what) + " must be positive");
    };
    positive(m.mass, "mass");
    positive(m.hbar, "hbar");
    if (m.spin != 1 && m.spin != 2) config_error("InvalidModel", "spin degeneracy must be 1 or 2");
    switch (m.kind) {
    case SystemKind::Box1D:
        positive(m.length, "box length");
        if (m.dim != 1) config_error("InvalidModel", "Box1D is one-dimensional");
        break;
    case SystemKind::Quartic1D:
        if (m.dim != 1) config_error("InvalidModel", "Quartic1D is one-dimensional");
        break;
    case SystemKind::Linear1D:
        positive(m.slope, "slope");
        if (m.dim != 1) config_error("InvalidModel", "Linear1D is one-dimensional");
        break;
    case SystemKind::IHO:
        positive(m.omega, "omega");
        if (m.dim < 1 || m.dim > 4) config_error("InvalidModel", "IHO dimension must be 1..4");
        break;
    case SystemKind::RectBilliard:
        positive(m.qx, "Qx");
        positive(m.qy, "Qy");
        if (m.dim != 2) config_error("InvalidModel", "RectBilliard is two-dimensional");
        break;
    case SystemKind::SphereBilliard:
        positive(m.length, "radius");
        if (m.dim < 1 || m.dim > 4) config_error("InvalidModel", "sphere dimension must be 1..4");
        break;
    case SystemKind::CircleBilliard:
        positive(m.length, "radius");
        if (m.dim != 2) config_error("InvalidModel", "CircleBilliard is two-dimensional");
        break;
    case SystemKind::CoupledQuartic2D:
        if (!(m.kappa < 1.0) || !std::isfinite(m.kappa))
            config_error("InvalidModel", "coupled quartic needs kappa < 1 to be bound");
        if (m.dim != 2) config_error("InvalidModel", "CoupledQuartic2D is two-dimensional");
        break;
    }
}

std::string system_name(SystemKind kind)
{
    switch (kind) {
    case SystemKind::Box1D: return "box1d";
    case SystemKind::Quartic1D: return "quartic1d";
    case SystemKind::Linear1D: return "linear1d";
    case SystemKind::IHO: return "iho";
    case SystemKind::RectBilliard: return "rect";
    case SystemKind::SphereBilliard: return "sphere";
    case SystemKind::CircleBilliard: return "circle";
    case SystemKind::CoupledQuartic2D: return "coupled_quartic";
    }
    return "?";
}

std::optional<SystemKind> parse_system(const std::string& name)
{
    for (auto k : {SystemKind::Box1D, SystemKind::Quartic1D, SystemKind::Linear1D, SystemKind::IHO,
                   SystemKind::RectBilliard, SystemKind::SphereBilliard, SystemKind::CircleBilliard,
                   SystemKind::CoupledQuartic2D}) {
        if (system_name(k) == name) return k;
    }
    if (name == "box") return SystemKind::Box1D;
    if (name == "quartic") return SystemKind::Quartic1D;
    if (name == "linear" || name == "ramp") return SystemKind::Linear1D;
    return std::nullopt;
}

bool is_billiard(const PotentialModel& m)
{
    return m.kind == SystemKind::Box1D || m.kind == SystemKind::RectBilliard ||
           m.kind == SystemKind::SphereBilliard || m.kind == SystemKind::CircleBilliard;
}

bool is_radial(const PotentialModel& m)
{
    return m.kind == SystemKind::IHO || m.kind == SystemKind::SphereBilliard || m.kind == SystemKind::CircleBilliard;
}

bool is_one_dimensional(const PotentialModel& m) { return m.dim == 1; }

double evaluate(const PotentialModel& m, Point p)
{
    switch (m.kind) {
    case SystemKind::Box1D:
        if (p.x < 0.0 || p.x > m.length) config_error("PointOutsideBilliard", "x outside [0, L]");
        return 0.0;
    case SystemKind::Quartic1D: return 0.25 * p.x * p.x * p.x * p.x;
    case SystemKind::Linear1D: return m.slope * p.x;
    case SystemKind::IHO: {
        const double r = m.dim == 1 ? p.x : radius_of(p);
        return 0.5 * m.mass * m.omega * m.omega * r * r;
    }
    case SystemKind::RectBilliard:
        if (p.x < 0.0 || p.x > m.qx || p.y < 0.0 || p.y > m.qy)
            config_error("PointOutsideBilliard", "point outside the rectangle");
        return 0.0;
    case SystemKind::SphereBilliard:
    case SystemKind::CircleBilliard:
        if (radius_of(p) > m.length * (1.0 + 1e-14)) config_error("PointOutsideBilliard", "point outside the sphere");
        return 0.0;
    case SystemKind::CoupledQuartic2D: {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return 0.5 * (x2 * x2 + y2 * y2) - m.kappa * x2 * y2;
    }
    }
    return 0.0;
}

double classical_momentum(const PotentialModel& m, double lambda, Point p)
{
    const double v = evaluate(m, p);
    const double ekin = lambda - v;
    // Differences at the rounding level of lambda and V count as a turning point.
    const double noise = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lambda), std::abs(v));
    if (std::abs(ekin) <= noise) return 0.0;
    if (ekin < 0.0) config_error("ClassicallyForbidden", "lambda below V(r)");
    return std::sqrt(2.0 * m.mass * ekin);
}

double profile_potential(const PotentialModel& m, double s)
{
    switch (m.kind) {
    case SystemKind::Quartic1D: return 0.25 * s * s * s * s;
    case SystemKind::Linear1D: return m.slope * s;
    case SystemKind::IHO: return 0.5 * m.mass * m.omega * m.omega * s * s;
    case SystemKind::CoupledQuartic2D: return 0.5 * s * s * s * s;  // along an axis
    default: return 0.0;
    }
}

double profile_slope(const PotentialModel& m, double s)
{
    switch (m.kind) {
    case SystemKind::Quartic1D: return s * s * s;
    case SystemKind::Linear1D: return m.slope;
    case SystemKind::IHO: return m.mass * m.omega * m.omega * s;
    case SystemKind::CoupledQuartic2D: return 2.0 * s * s * s;
    default: return 0.0;
    }
}

double turning_point(const PotentialModel& m, double lambda)
{
    if (is_billiard(m)) {
        if (m.kind == SystemKind::RectBilliard) config_error("NoTurningPoint", "rectangle has no single wall coordinate");
        return m.length;
    }
    if (m.kind == SystemKind::CoupledQuartic2D) return turning_point_along(m, lambda, 1.0, 0.0);
    if (m.kind == SystemKind::Linear1D) return lambda / m.slope;
    if (!(lambda > 0.0)) numerical_error("NoTurningPoint", "lambda below the potential minimum");
    if (m.kind == SystemKind::Quartic1D) return std::pow(4.0 * lambda, 0.25);
    return std::sqrt(2.0 * lambda / m.mass) / m.omega;  // IHO
}

double turning_point_along(const PotentialModel& m, double lambda, double cx, double cy)
{
    const double n = std::hypot(cx, cy);
    const double c = cx / n, s = cy / n;
    if (m.kind == SystemKind::CoupledQuartic2D) {
        const double q = 0.5 * (c * c * c * c + s * s * s * s) - m.kappa * c * c * s * s;
        if (!(lambda > 0.0) || !(q > 0.0)) numerical_error("NoTurningPoint", "no turning point along ray");
        return std::pow(lambda / q, 0.25);
    }
    if (m.kind == SystemKind::RectBilliard) {
        const double tx = c > 0 ? m.qx / c : INFINITY;
        const double ty = s > 0 ? m.qy / s : INFINITY;
        return std::min(tx, ty);
    }
    return turning_point(m, lambda);
}

ActionPeriod twice_action(const PotentialModel& m, double lambda, double a, double b)
{
    if (b < a) std::swap(a, b);
    if (b == a) return {};
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double mid = 0.5 * (a + b);
    const double mass = m.mass;

    // s -> a + u^2 and s -> b - u^2 remove the square-root endpoint behaviour.
    // The kinetic energy is measured from the endpoint value so that it stays
    // accurate (and positive) right at a turning point.
    ActionPeriod out;
    for (int side = 0; side < 2; ++side) {
        const double base = side == 0 ? a : b;
        const double dir = side == 0 ? 1.0 : -1.0;
        const double vb = profile_potential(m, base);
        double e0 = lambda - vb;
        if (std::abs(e0) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lambda), std::abs(vb)))
            e0 = 0.0;
        auto mom = [&](double u) {
            const double h = u * u;
            const double ekin = e0 - dir * h * divided_difference(m, base, base + dir * h);
            return std::sqrt(2.0 * mass * std::max(0.0, ekin));
        };
        const double umax = std::sqrt(std::abs(mid - base));
        double err_s = 0.0, err_t = 0.0;
        const double s_part = GK::integrate(
            [&](double u) { return 2.0 * u * mom(u); }, 0.0, umax, 20, 1e-13, &err_s);
        const double t_part = GK::integrate(
            [&](double u) {
                const double p = mom(u);
                return p > 0.0 ? 2.0 * u * mass / p : 0.0;
            },
            0.0, umax, 20, 1e-13, &err_t);
        if (err_s > 1e-10 * std::abs(s_part) + 1e-300 || err_t > 1e-10 * std::abs(t_part) + 1e-300)
            numerical_error("QuadratureFailure", "action quadrature missed its tolerance");
        out.action += 2.0 * s_part;
        out.period += 2.0 * t_part;
    }
    return out;
}

ActionPeriod full_period(const PotentialModel& m, double lambda)
{
    if (m.kind == SystemKind::IHO) return {2.0 * pi * lambda / m.omega, 2.0 * pi / m.omega};
    if (m.kind == SystemKind::Box1D) {
        const double p = std::sqrt(2.0 * m.mass * lambda);
        return {2.0 * p * m.length, 2.0 * m.length * m.mass / p};
    }
    if (m.kind != SystemKind::Quartic1D && m.kind != SystemKind::CoupledQuartic2D)
        config_error("Unsupported", "full period needs a bound 1D or radial profile");
    const double xl = turning_point(m, lambda);
    return twice_action(m, lambda, -xl, xl);
}

RadialOrbitSpec radial_orbit_numeric(const PotentialModel& m, double lambda, double r, OrbitSign sign, int k)
{
    if (k < 0) config_error("InvalidOrbit", "repetition number must be non-negative");
    const double xl = turning_point(m, lambda);
    const double s = std::abs(r);
    if (s > xl * (1 + 1e-14)) config_error("ClassicallyForbidden", "point outside the turning point");
    const ActionPeriod plus = twice_action(m, lambda, s, xl);
    const ActionPeriod minus = twice_action(m, lambda, -xl, s);
    const ActionPeriod& base = sign == OrbitSign::Plus ? plus : minus;
    const double s_r1 = plus.action + minus.action;
    const double t_r1 = plus.period + minus.period;
    RadialOrbitSpec o;
    o.sign = sign;
    o.k = k;
    o.action = base.action + k * s_r1;
    o.period = base.period + k * t_r1;
    o.morse = sign == OrbitSign::Plus ? 2 * k * m.dim + 1 : 2 * k * m.dim + m.dim;
    return o;
}

std::optional<RadialOrbitSpec> radial_orbit(const PotentialModel& m, double lambda, double r, OrbitSign sign, int k)
{
    if (k < 0) config_error("InvalidOrbit", "repetition number must be non-negative");
    RadialOrbitSpec o;
    o.sign = sign;
    o.k = k;
    const double sg = sign == OrbitSign::Plus ? 1.0 : -1.0;
    switch (m.kind) {
    case SystemKind::IHO: {
        const double s = std::abs(r);
        const double p = classical_momentum(m, lambda, {s, 0.0});
        const double pl = std::sqrt(2.0 * m.mass * lambda);
        const double arc = std::asin(std::min(1.0, m.mass * m.omega * s / pl));
        o.action = (2 * k + 1) * pi * lambda / m.omega - sg * (s * p + 2.0 * lambda / m.omega * arc);
        o.period = (2 * k + 1) * pi / m.omega - sg * 2.0 / m.omega * arc;
        o.morse = sign == OrbitSign::Plus ? 2 * k * m.dim + 1 : 2 * k * m.dim + m.dim;
        return o;
    }
    case SystemKind::Linear1D: {
        if (sign == OrbitSign::Minus || k > 0) return std::nullopt;
        const double e = lambda - m.slope * r;
        if (e < 0.0) config_error("ClassicallyForbidden", "point beyond the ramp turning point");
        const double c = std::sqrt(2.0 * m.mass) / m.slope;
        o.action = 4.0 / 3.0 * c * e * std::sqrt(e);
        o.period = 2.0 * c * std::sqrt(e);
        o.morse = 1;
        return o;
    }
    case SystemKind::Box1D: {
        if (r < 0.0 || r > m.length) config_error("PointOutsideBilliard", "x outside [0, L]");
        const double p = std::sqrt(2.0 * m.mass * lambda);
        const double near = std::min(r, m.length - r), far = std::max(r, m.length - r);
        const double d = sign == OrbitSign::Plus ? near : far;
        o.action = 2.0 * p * (d + k * m.length);
        o.period = o.action * m.mass / (p * p);
        o.morse = 2 * (2 * k + 1);  // one hard-wall reflection plus k bounces, two units each
        return o;
    }
    case SystemKind::Quartic1D: return radial_orbit_numeric(m, lambda, r, sign, k);
    default: config_error("Unsupported", "radial orbits are defined for 1D and radial smooth systems");
    }
}

} // namespace scdens
