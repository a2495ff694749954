#include "scdens/orbits.hpp"

#include "scdens/error.hpp"
#include "scdens/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

// alpha_D = 2 pi (2 i pi hbar)^{-(D+1)/2}
cplx alpha(int dim, double hbar)
{
    const double e = 0.5 * (dim + 1);
    return 2.0 * pi * std::pow(2.0 * pi * hbar, -e) * std::polar(1.0, -0.5 * pi * e);
}

double local_momentum(const PotentialModel& m, double lambda, Point p)
{
    const double p_loc = classical_momentum(m, lambda, p);
    const double p_lambda = std::sqrt(2.0 * m.mass * std::abs(lambda));
    if (!(p_loc > 1e-8 * p_lambda))
        numerical_error("TurningPointSingularity", "closed-orbit amplitudes diverge where p -> 0");
    return p_loc;
}

struct Sums {
    cplx plain, weighted;
};

Sums orbit_sum(std::span<const ClosedOrbit> orbits, double hbar, double temperature)
{
    Sums s{};
    for (const ClosedOrbit& o : orbits) {
        double amp = std::sqrt(std::abs(o.det_perp)) / o.period;
        if (temperature > 0.0) amp *= modulation(temperature, o.period / hbar);
        const cplx term = amp * std::polar(1.0, o.action / hbar - 0.5 * pi * o.morse);
        s.plain += term;
        s.weighted += o.mismatch * term;
    }
    return s;
}

LocalOscillation finish(const Sums& s, const PotentialModel& m, double p_loc)
{
    const cplx a = alpha(m.dim, m.hbar);
    const double spin = 0.5 * m.spin;
    LocalOscillation out;
    out.rho = spin * 2.0 * m.mass * m.hbar / (pi * p_loc) * (a * s.plain).real();
    out.tau = spin * m.hbar * p_loc / pi * (a * s.plain).real();
    out.tau1 = spin * m.hbar * p_loc / pi * (a * s.weighted).real();
    out.xi = 0.5 * (out.tau + out.tau1);
    return out;
}

// Morse-index growth per full radial period.
int morse_step(const PotentialModel& m) { return m.kind == SystemKind::Box1D ? 4 : 2 * m.dim; }

double coordinate(const PotentialModel& m, Point p) { return is_radial(m) ? std::hypot(p.x, p.y) : p.x; }

} // namespace

std::string to_string(const OrbitTag& t)
{
    if (t.family == '+' || t.family == '-') return std::string(1, t.family) + "k" + std::to_string(t.first);
    return std::string("rect-") + t.family + "(" + std::to_string(t.first) + "," + std::to_string(t.second) + ")";
}

void OscillatingDensities::resize(std::size_t n)
{
    rho.assign(n, 0.0);
    tau.assign(n, 0.0);
    tau1.assign(n, 0.0);
    xi.assign(n, 0.0);
}

void OscillatingDensities::set(std::size_t i, const LocalOscillation& v)
{
    rho[i] = v.rho;
    tau[i] = v.tau;
    tau1[i] = v.tau1;
    xi[i] = v.xi;
}

LocalOscillation assemble(std::span<const ClosedOrbit> orbits, double lambda, Point p, const PotentialModel& m,
                          double temperature)
{
    if (orbits.empty()) return {};
    const double p_loc = local_momentum(m, lambda, p);
    return finish(orbit_sum(orbits, m.hbar, temperature), m, p_loc);
}

std::vector<LocalOscillation> orbit_terms(std::span<const ClosedOrbit> orbits, double lambda, Point p,
                                          const PotentialModel& m)
{
    std::vector<LocalOscillation> out;
    out.reserve(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) out.push_back(assemble(orbits.subspan(i, 1), lambda, p, m));
    return out;
}

std::vector<ClosedOrbit> radial_orbits(const PotentialModel& m, double lambda, double s, int k_max)
{
    if (k_max < 0) config_error("InvalidOrbit", "k_max must be non-negative");
    std::vector<ClosedOrbit> out;
    const auto plus = radial_orbit(m, lambda, s, OrbitSign::Plus, 0);
    const auto minus = radial_orbit(m, lambda, s, OrbitSign::Minus, 0);
    double det = 1.0;
    if (m.dim > 1) {
        if (m.kind != SystemKind::IHO) config_error("Unsupported", "radial orbit sums in D > 1 need the oscillator");
        const double p = classical_momentum(m, lambda, {s, 0.0});
        det = std::pow(m.mass * lambda / (std::abs(s) * p), m.dim - 1);
    }
    auto push = [&](char fam, int k, double action, double period, int morse) {
        out.push_back({action, period, morse, det, -1.0, {fam, k, 0}});
    };
    if (plus) push('+', 0, plus->action, plus->period, plus->morse);
    if (minus) push('-', 0, minus->action, minus->period, minus->morse);
    if (!plus || !minus) return out;  // the ramp has a single orbit
    const double s1 = plus->action + minus->action;
    const double t1 = plus->period + minus->period;
    const int dm = morse_step(m);
    for (int k = 1; k <= k_max; ++k) {
        push('+', k, plus->action + k * s1, plus->period + k * t1, plus->morse + k * dm);
        push('-', k, minus->action + k * s1, minus->period + k * t1, minus->morse + k * dm);
    }
    return out;
}

LocalOscillation delta_rho_1d(const PotentialModel& m, double lambda, double x, int k_max)
{
    if (!is_one_dimensional(m)) config_error("Unsupported", "delta_rho_1d needs a 1D system");
    const auto orbits = radial_orbits(m, lambda, x, k_max);
    // Closer than S_+/hbar = 1 to a smooth turning point the amplitudes are meaningless.
    if (m.kind != SystemKind::Box1D && orbits.front().action < m.hbar)
        numerical_error("TurningPointSingularity", "point too close to the turning point for the orbit sum");
    return assemble(orbits, lambda, {x, 0.0}, m);
}

LocalOscillation delta_rho_iho(const PotentialModel& m, double lambda, double r, const RadialSumOptions& opt)
{
    if (m.kind != SystemKind::IHO) config_error("Unsupported", "delta_rho_iho needs the oscillator");
    const double p_lambda = std::sqrt(2.0 * m.mass * lambda);
    const double s = std::abs(r);
    if (m.dim > 1 && (s == 0.0 || s < opt.caustic_c * m.hbar / p_lambda))
        numerical_error("CausticSingularity", "r is inside the caustic switch radius; use the centre formula");
    const auto orbits = radial_orbits(m, lambda, s, opt.k_max);
    if (orbits.front().action < m.hbar)
        numerical_error("TurningPointSingularity", "point too close to the turning point for the orbit sum");
    return assemble(orbits, lambda, {s, 0.0}, m);
}

std::vector<ClosedOrbit> rect_orbits(const PotentialModel& m, double lambda, Point p, int K, double max_length)
{
    if (m.kind != SystemKind::RectBilliard) config_error("Unsupported", "rect_orbits needs the rectangle");
    if (!(p.x > 0.0 && p.x < m.qx && p.y > 0.0 && p.y < m.qy))
        numerical_error("DegenerateImage", "point on or outside the rectangle boundary");
    if (K < 1) config_error("InvalidCutoff", "K must be >= 1");
    const double pl = std::sqrt(2.0 * m.mass * lambda);
    std::vector<ClosedOrbit> out;
    out.reserve(3 * static_cast<std::size_t>(2 * K + 1) * static_cast<std::size_t>(2 * K + 1));
    // Family: image (2 kx Qx + sx x, 2 ky Qy + sy y) with (sx, sy) = (+,-), (-,+), (-,-).
    struct Family {
        char name;
        int sx, sy;
    };
    for (const Family f : {Family{'a', 1, -1}, Family{'b', -1, 1}, Family{'c', -1, -1}})
        for (int kx = -K; kx <= K; ++kx)
            for (int ky = -K; ky <= K; ++ky) {
                const double dx = 2.0 * kx * m.qx + (f.sx - 1) * p.x;
                const double dy = 2.0 * ky * m.qy + (f.sy - 1) * p.y;
                const double len = std::hypot(dx, dy);
                if (len > max_length) continue;
                if (len == 0.0) numerical_error("DegenerateImage", "image coincides with the point");
                const int reflections = (f.sx < 0 ? std::abs(2 * kx - 1) : std::abs(2 * kx)) +
                                        (f.sy < 0 ? std::abs(2 * ky - 1) : std::abs(2 * ky));
                const double cx = dx / len, cy = dy / len;
                ClosedOrbit o;
                o.action = pl * len;
                o.period = m.mass * len / pl;
                o.morse = 2 * reflections;
                o.det_perp = std::pow(pl / len, m.dim - 1);
                o.mismatch = f.sx * cx * cx + f.sy * cy * cy;
                o.tag = {f.name, kx, ky};
                out.push_back(o);
            }
    return out;
}

ImageCutoff default_image_cutoff(const PotentialModel& m, double ratio)
{
    const double shortest = std::min(m.qx, m.qy);
    ImageCutoff c;
    c.max_length = shortest * std::pow(ratio, -2.0 / 3.0);
    c.K = static_cast<int>(std::ceil(c.max_length / (2.0 * shortest))) + 1;
    return c;
}

LocalOscillation rect_tabulated(const PotentialModel& m, double lambda, Point p, const ImageCutoff& cut)
{
    const double hbar = m.hbar;
    const double pl = std::sqrt(2.0 * m.mass * lambda);
    // f(u, v, mu) with L = 2 sqrt(u^2 + v^2).
    auto f = [&](double u, double v, int mu) {
        const double len = 2.0 * std::hypot(u, v);
        return 4.0 * hbar * std::sqrt(pl) / std::pow(2.0 * pi * hbar * len, 1.5) *
               std::cos(pl * len / hbar - 0.75 * pi - mu * pi);
    };
    auto cos_double_angle = [](double u, double v) { return (u * u - v * v) / (u * u + v * v); };
    double rho = 0.0, tau1 = 0.0;
    const int K = cut.K;
    for (int kx = -K; kx <= K; ++kx)
        for (int ky = -K; ky <= K; ++ky) {
            const double ua = kx * m.qx, va = ky * m.qy - p.y;
            const double ub = kx * m.qx - p.x, vb = ky * m.qy;
            const double uc = kx * m.qx - p.x, vc = ky * m.qy - p.y;
            if (2.0 * std::hypot(ua, va) <= cut.max_length) {
                const double r = f(ua, va, 1);
                rho += r;
                tau1 += lambda * cos_double_angle(ua, va) * r;
            }
            if (2.0 * std::hypot(ub, vb) <= cut.max_length) {
                // Initial and final momenta differ by the x reflection: Q = (v^2 - u^2)/(u^2 + v^2).
                const double r = f(ub, vb, 1);
                rho += r;
                tau1 -= lambda * cos_double_angle(ub, vb) * r;
            }
            if (2.0 * std::hypot(uc, vc) <= cut.max_length) {
                const double r = f(uc, vc, 0);
                rho += r;
                tau1 -= lambda * r;
            }
        }
    const double spin = 0.5 * m.spin;
    LocalOscillation out;
    out.rho = spin * rho;
    out.tau = lambda * out.rho;
    out.tau1 = spin * tau1;
    out.xi = 0.5 * (out.tau + out.tau1);
    return out;
}

OscillatingDensities scl_profile_1d(const PotentialModel& m, double lambda, const Grid& grid, int k_max, Exec exec)
{
    OscillatingDensities out;
    out.grid = grid;
    out.lambda = lambda;
    out.resize(grid.size());
    for_each_index(exec, grid.size(), [&](std::size_t i) { out.set(i, delta_rho_1d(m, lambda, grid.points[i].x, k_max)); });
    return out;
}

OscillatingDensities scl_profile_iho(const PotentialModel& m, double lambda, const Grid& grid,
                                     const RadialSumOptions& opt, Exec exec)
{
    OscillatingDensities out;
    out.grid = grid;
    out.lambda = lambda;
    out.resize(grid.size());
    for_each_index(exec, grid.size(),
                   [&](std::size_t i) { out.set(i, delta_rho_iho(m, lambda, coordinate(m, grid.points[i]), opt)); });
    return out;
}

OscillatingDensities scl_profile_rect(const PotentialModel& m, double lambda, const Grid& grid, const ImageCutoff& cut,
                                      Exec exec)
{
    OscillatingDensities out;
    out.grid = grid;
    out.lambda = lambda;
    out.resize(grid.size());
    for_each_index(exec, grid.size(), [&](std::size_t i) {
        const auto orbits = rect_orbits(m, lambda, grid.points[i], cut.K, cut.max_length);
        out.set(i, assemble(orbits, lambda, grid.points[i], m));
    });
    return out;
}

LvtStats lvt_residual(const OscillatingParts& parts, const PotentialModel& m, double lambda, const Grid& grid,
                      const Window& window)
{
    const std::size_t n = grid.size();
    if (parts.rho.size() != n || parts.tau.size() != n) mismatch_error("GridMismatch", "LVT inputs differ in length");
    LvtStats st;
    st.residual.resize(n);
    double max_tau = 0.0, sum_r = 0.0, sum_t = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st.residual[i] = parts.tau[i] - (lambda - evaluate(m, grid.points[i])) * parts.rho[i];
        if (!window.contains(grid.coord[i])) continue;
        ++count;
        max_tau = std::max(max_tau, std::abs(parts.tau[i]));
        st.max_abs = std::max(st.max_abs, std::abs(st.residual[i]));
        sum_r += st.residual[i] * st.residual[i];
        sum_t += parts.tau[i] * parts.tau[i];
    }
    if (count == 0) config_error("InvalidWindow", "no grid points inside the LVT window");
    const double rms_r = std::sqrt(sum_r / count);
    st.rms_ratio = sum_t > 0.0 ? rms_r / std::sqrt(sum_t / count) : 0.0;
    if (max_tau > 0.0) {
        st.max_abs /= max_tau;
        st.rms = rms_r / max_tau;
    }
    return st;
}

double trace_formula_1d(const PotentialModel& m, double energy, int k_max)
{
    return hot_dos_1d(m, energy, 0.0, k_max);
}

} // namespace scdens
