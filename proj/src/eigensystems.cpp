#include "eigensystems.hpp"

#include "scdens/error.hpp"
#include "scdens/specfun.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scdens::detail {
namespace {

constexpr double pi = std::numbers::pi;

long long binomial(long long n, long long k)
{
    if (k < 0 || n < k) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Hard-wall segment [0, L].
class BoxSystem final : public Eigensystem {
public:
    BoxSystem(const PotentialModel& m, const Need& need) : m_(m)
    {
        const double unit = pi * pi * m.hbar * m.hbar / (2.0 * m.mass * m.length * m.length);
        for (int n = 1;; ++n) {
            levels_.push_back({unit * n * n, 1, {n, 0}});
            if (satisfied(levels_, need)) break;
        }
    }

    Channels at(Point p, std::span<const double> occ) const override
    {
        const double l = m_.length;
        const double c = 2.0 / l;
        const double kin = m_.hbar * m_.hbar / (2.0 * m_.mass);
        Channels out;
        for (std::size_t i = 0; i < levels_.size() && i < occ.size(); ++i) {
            if (occ[i] == 0.0) continue;
            const double k = pi * levels_[i].qn[0] / l;
            const double s = std::sin(k * p.x), co = std::cos(k * p.x);
            out.rho += occ[i] * c * s * s;
            out.tau += occ[i] * levels_[i].energy * c * s * s;
            out.tau1 += occ[i] * kin * c * k * k * co * co;
        }
        return out;
    }

private:
    PotentialModel m_;
};

// Rectangle [0, Qx] x [0, Qy].
class RectSystem final : public Eigensystem {
public:
    RectSystem(const PotentialModel& m, const Need& need) : m_(m)
    {
        const double kin = m.hbar * m.hbar / (2.0 * m.mass);
        auto energy = [&](int nx, int ny) {
            return kin * pi * pi * (nx * nx / (m.qx * m.qx) + ny * ny / (m.qy * m.qy));
        };
        double ecut = std::max(need.energy, 4.0 * energy(1, 1));
        for (;;) {
            levels_.clear();
            const int nxmax = static_cast<int>(std::sqrt(ecut / kin) * m.qx / pi) + 1;
            const int nymax = static_cast<int>(std::sqrt(ecut / kin) * m.qy / pi) + 1;
            for (int nx = 1; nx <= nxmax; ++nx)
                for (int ny = 1; ny <= nymax; ++ny)
                    if (energy(nx, ny) <= ecut) levels_.push_back({energy(nx, ny), 1, {nx, ny}});
            std::sort(levels_.begin(), levels_.end(), [](auto& a, auto& b) { return a.energy < b.energy; });
            if (satisfied(levels_, need)) break;
            ecut *= 1.3;
        }
        for (const auto& lv : levels_) {
            nxmax_ = std::max(nxmax_, lv.qn[0]);
            nymax_ = std::max(nymax_, lv.qn[1]);
        }
    }

    Channels at(Point p, std::span<const double> occ) const override
    {
        std::vector<double> sx(nxmax_ + 1), cx(nxmax_ + 1), sy(nymax_ + 1), cy(nymax_ + 1);
        for (int n = 1; n <= nxmax_; ++n) {
            sx[n] = std::sin(n * pi * p.x / m_.qx);
            cx[n] = std::cos(n * pi * p.x / m_.qx);
        }
        for (int n = 1; n <= nymax_; ++n) {
            sy[n] = std::sin(n * pi * p.y / m_.qy);
            cy[n] = std::cos(n * pi * p.y / m_.qy);
        }
        const double norm2 = 4.0 / (m_.qx * m_.qy);
        const double kin = m_.hbar * m_.hbar / (2.0 * m_.mass);
        Channels out;
        for (std::size_t i = 0; i < levels_.size() && i < occ.size(); ++i) {
            if (occ[i] == 0.0) continue;
            const int nx = levels_[i].qn[0], ny = levels_[i].qn[1];
            const double kx = nx * pi / m_.qx, ky = ny * pi / m_.qy;
            const double phi2 = norm2 * sx[nx] * sx[nx] * sy[ny] * sy[ny];
            const double grad2 = norm2 * (kx * kx * cx[nx] * cx[nx] * sy[ny] * sy[ny] +
                                          ky * ky * sx[nx] * sx[nx] * cy[ny] * cy[ny]);
            out.rho += occ[i] * phi2;
            out.tau += occ[i] * levels_[i].energy * phi2;
            out.tau1 += occ[i] * kin * grad2;
        }
        return out;
    }

private:
    PotentialModel m_;
    int nxmax_ = 0, nymax_ = 0;
};

// Isotropic oscillator in D dimensions, one table entry per main shell.
// Radial functions come from the normalised Laguerre recurrence.
class OscillatorSystem final : public Eigensystem {
public:
    OscillatorSystem(const PotentialModel& m, const Need& need) : m_(m)
    {
        for (int shell = 0;; ++shell) {
            const double e = m.hbar * m.omega * (shell + 0.5 * m.dim);
            levels_.push_back({e, static_cast<int>(binomial(shell + m.dim - 1, m.dim - 1)), {shell, 0}});
            if (satisfied(levels_, need)) break;
        }
    }

    Channels at(Point p, std::span<const double> occ) const override
    {
        const int d = m_.dim;
        const double b = std::sqrt(m_.hbar / (m_.mass * m_.omega));
        const double r = std::max(m_.dim == 1 ? std::abs(p.x) : std::hypot(p.x, p.y), 1e-7 * b);
        const double rs = r / b;
        const double x = rs * rs;
        const double v = 0.5 * m_.mass * m_.omega * m_.omega * r * r;
        const double kin = m_.hbar * m_.hbar / (2.0 * m_.mass);
        const double area = unit_sphere_area(d);
        const double unit_rho = std::pow(b, -d);
        const int top = static_cast<int>(std::min(levels_.size(), occ.size())) - 1;
        const int lmax = d == 1 ? std::min(top, 1) : top;

        Channels out;
        for (int l = 0; l <= lmax; ++l) {
            const double alpha = l + 0.5 * d - 1.0;
            const double angular = static_cast<double>(angular_multiplicity(l, d)) / area;
            if (angular == 0.0) continue;
            const double logpref = 0.5 * std::log(2.0) + l * std::log(rs) - 0.5 * x - 0.5 * std::lgamma(alpha + 1.0);
            const double pref = std::exp(logpref);
            double u_prev = 0.0, u = 1.0;
            for (int nr = 0; 2 * nr + l <= top; ++nr) {
                if (nr > 0) {
                    const double n = nr - 1;
                    const double next = ((2 * n + 1 + alpha - x) * u - std::sqrt(n * (n + alpha)) * u_prev) /
                                        std::sqrt((n + 1) * (n + 1 + alpha));
                    u_prev = u;
                    u = next;
                }
                const int shell = 2 * nr + l;
                const double w = occ[shell];
                if (w == 0.0) continue;
                const double radial = pref * u;
                const double dradial =
                    pref * ((l / rs - rs) * u + 2.0 / rs * (nr * u - std::sqrt(nr * (nr + alpha)) * u_prev));
                const double r2 = radial * radial * unit_rho;
                const double dr2 = dradial * dradial * unit_rho / (b * b);
                const double cent = l * (l + d - 2.0) * r2 / (r * r);
                out.rho += w * angular * r2;
                out.tau += w * angular * (levels_[shell].energy - v) * r2;
                out.tau1 += w * angular * kin * (dr2 + cent);
            }
        }
        return out;
    }

private:
    PotentialModel m_;
};

// D-dimensional hard sphere; levels are zeros of J_{l+D/2-1}(kR).
class SphereSystem final : public Eigensystem {
    struct Mode {
        double k;
        double nu;
        int l;
        double amp;      // C k^nu
        double angular;  // multiplicity / sphere area
    };

public:
    SphereSystem(const PotentialModel& m, const Need& need) : m_(m)
    {
        const double kin = m.hbar * m.hbar / (2.0 * m.mass);
        const double rad = m.length;
        double xcut = 10.0;
        if (need.energy > 0.0) xcut = std::max(xcut, std::sqrt(need.energy / kin) * rad * 1.02);
        for (;;) {
            levels_.clear();
            modes_.clear();
            const int lmax = m.dim == 1 ? 1 : static_cast<int>(xcut) + 2;
            for (int l = 0; l <= lmax; ++l) {
                const double nu = l + 0.5 * m.dim - 1.0;
                const long long mult = angular_multiplicity(l, m.dim);
                if (mult == 0) continue;
                int n = 0;
                for (double z : bessel_zeros(nu, xcut)) {
                    ++n;
                    const double k = z / rad;
                    const double jn1 = bessel_j(nu + 1.0, z).value;
                    const double c = std::sqrt(2.0 / (rad * rad * jn1 * jn1));
                    levels_.push_back({kin * k * k, static_cast<int>(mult), {n, l}});
                    modes_.push_back({k, nu, l, c * std::pow(k, nu), mult / unit_sphere_area(m.dim)});
                }
            }
            std::vector<std::size_t> order(levels_.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return levels_[a].energy < levels_[b].energy; });
            SpectrumTable sorted;
            std::vector<Mode> smodes;
            for (auto i : order) {
                sorted.push_back(levels_[i]);
                smodes.push_back(modes_[i]);
            }
            levels_ = std::move(sorted);
            modes_ = std::move(smodes);
            if (satisfied(levels_, need)) {
                // Keep only levels that are complete below the scan ceiling.
                break;
            }
            xcut *= 1.25;
        }
    }

    Channels at(Point p, std::span<const double> occ) const override
    {
        const double r = std::max(std::hypot(p.x, p.y), 1e-9 * m_.length);
        const double kin = m_.hbar * m_.hbar / (2.0 * m_.mass);
        Channels out;
        for (std::size_t i = 0; i < modes_.size() && i < occ.size(); ++i) {
            if (occ[i] == 0.0) continue;
            const Mode& md = modes_[i];
            const double z = md.k * r;
            double s0, s1;  // J_nu(z)/z^nu and J_{nu+1}(z)/z^{nu+1}
            if (z < 2.0) {
                s0 = bessel_j_scaled(md.nu, z);
                s1 = bessel_j_scaled(md.nu + 1.0, z);
            } else {
                const BesselPair bp = bessel_j_pair(md.nu, z);
                const double zn = std::pow(z, md.nu);
                s0 = bp.j / zn;
                s1 = (md.nu / z * bp.j - bp.jp) / (zn * z);
            }
            const double rl = std::pow(r, md.l);
            const double radial = md.amp * rl * s0;
            const double dradial = md.amp * ((md.l > 0 ? md.l * rl / r * s0 : 0.0) - rl * r * md.k * md.k * s1);
            const double r2 = radial * radial;
            const double cent = md.l * (md.l + m_.dim - 2.0) * r2 / (r * r);
            out.rho += occ[i] * md.angular * r2;
            out.tau += occ[i] * md.angular * levels_[i].energy * r2;
            out.tau1 += occ[i] * md.angular * kin * (dradial * dradial + cent);
        }
        return out;
    }

private:
    static std::vector<double> bessel_zeros(double nu, double xmax)
    {
        std::vector<double> zeros;
        const double step = 0.4;
        double a = std::max(nu, 1e-3);
        double fa = bessel_j(nu, a).value;
        for (double bnd = a + step; bnd <= xmax + step; bnd += step) {
            const double fb = bessel_j(nu, bnd).value;
            if (fa == 0.0) {
                zeros.push_back(a);
            } else if ((fa < 0.0) != (fb < 0.0)) {
                std::uintmax_t iters = 200;
                auto f = [nu](double x) { return bessel_j(nu, x).value; };
                const auto [lo, hi] = boost::math::tools::toms748_solve(
                    f, a, bnd, fa, fb, boost::math::tools::eps_tolerance<double>(42), iters);
                const double z = 0.5 * (lo + hi);
                if (z <= xmax) zeros.push_back(z);
            }
            a = bnd;
            fa = fb;
        }
        return zeros;
    }

    PotentialModel m_;
    std::vector<Mode> modes_;
};

} // namespace

long long angular_multiplicity(int l, int dim)
{
    if (dim == 1) return l <= 1 ? 1 : 0;
    return binomial(l + dim - 1, dim - 1) - binomial(l + dim - 3, dim - 1);
}

double unit_sphere_area(int dim) { return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim); }

bool satisfied(const SpectrumTable& levels, const Need& need)
{
    if (levels.size() < need.levels + 1) return false;
    double states = 0.0;
    std::size_t idx = 0;
    for (; idx < levels.size(); ++idx) {
        states += levels[idx].degeneracy;
        if (idx + 1 >= need.levels && states >= need.states && levels[idx].energy >= need.energy) break;
    }
    if (idx + 1 >= levels.size()) return false;
    // A strictly higher level must follow the last needed one.
    const double e = levels[idx].energy;
    for (std::size_t j = idx + 1; j < levels.size(); ++j)
        if (levels[j].energy > e * (1.0 + 1e-9) + 1e-300) return true;
    return false;
}

std::unique_ptr<Eigensystem> make_box(const PotentialModel& m, const Need& need)
{
    return std::make_unique<BoxSystem>(m, need);
}
std::unique_ptr<Eigensystem> make_rect(const PotentialModel& m, const Need& need)
{
    return std::make_unique<RectSystem>(m, need);
}
std::unique_ptr<Eigensystem> make_oscillator(const PotentialModel& m, const Need& need)
{
    return std::make_unique<OscillatorSystem>(m, need);
}
std::unique_ptr<Eigensystem> make_sphere(const PotentialModel& m, const Need& need)
{
    return std::make_unique<SphereSystem>(m, need);
}

std::unique_ptr<Eigensystem> make(const PotentialModel& m, const Need& need)
{
    validate(m);
    switch (m.kind) {
    case SystemKind::Box1D: return make_box(m, need);
    case SystemKind::RectBilliard: return make_rect(m, need);
    case SystemKind::IHO: return make_oscillator(m, need);
    case SystemKind::SphereBilliard:
    case SystemKind::CircleBilliard: return make_sphere(m, need);
    case SystemKind::Quartic1D: return make_quartic(m, need);
    case SystemKind::CoupledQuartic2D: return make_coupled_quartic(m, need);
    case SystemKind::Linear1D: config_error("NoDiscreteSpectrum", "the linear ramp has a continuous spectrum");
    }
    return nullptr;
}

} // namespace scdens::detail
