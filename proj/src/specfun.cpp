#include "scdens/specfun.hpp"

#include "scdens/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace scdens {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double fpmin = std::numeric_limits<double>::min() / eps;
constexpr int max_iter = 1000000;

struct Series {
    double sum;    // sum_k t_k with t_k = (-x^2/4)^k / (k! Gamma(nu+k+1))
    double dsum;   // sum_k (nu + 2k) t_k
    double abs_sum;
};

Series power_series(double nu, double x)
{
    const double q = -0.25 * x * x;
    double t = 1.0 / std::tgamma(nu + 1.0);
    Series s{t, nu * t, std::abs(t)};
    for (int k = 0; k < 500; ++k) {
        t *= q / ((k + 1.0) * (nu + k + 1.0));
        s.sum += t;
        s.dsum += (nu + 2.0 * (k + 1)) * t;
        s.abs_sum += std::abs(t);
        if (std::abs(t) < 1e-18 * std::abs(s.sum)) break;
    }
    return s;
}

// Ai(-x), Ai'(-x) from the large-argument expansions in 1/zeta.
AiryPair airy_oscillatory_asymptotic(double x, double zeta)
{
    double p = 0, q = 0, r = 0, s = 0;
    double u = 1.0, zk = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
        const double v = k == 0 ? 1.0 : -(6.0 * k + 1) / (6.0 * k - 1) * u;
        const double term = u * zk;
        if (std::abs(term) > last) break;  // asymptotic series: stop at the smallest term
        last = std::abs(term);
        const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * u * zk;
            r += sign * v * zk;
        } else {
            q += sign * u * zk;
            s += sign * v * zk;
        }
        if (last < 1e-18) break;
        u *= (6.0 * k + 1) * (6.0 * k + 3) * (6.0 * k + 5) / (216.0 * (k + 1) * (2.0 * k + 1));
        zk /= zeta;
    }
    const double sn = std::sin(zeta + pi / 4), cs = std::cos(zeta + pi / 4);
    const double x4 = std::pow(x, 0.25);
    const double rpi = 1.0 / std::sqrt(pi);
    return {rpi / x4 * (sn * p - cs * q), -rpi * x4 * (cs * r + sn * s)};
}

} // namespace

double gamma_fn(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) config_error("DomainError", "gamma requires x > 0");
    return std::tgamma(x);
}

BesselJY bessel_jy_large(double xnu, double x)
{
    if (xnu < 0.0 || x < 2.0) numerical_error("DomainError", "bessel_jy_large needs nu >= 0, x >= 2");
    const int nl = std::max(0, static_cast<int>(xnu - x + 1.5));
    const double xmu = xnu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    // Steed's first continued fraction for J'/J at order xnu.
    int isign = 1;
    double h = std::max(xnu * xi, fpmin);
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < max_iter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b - 1.0 / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= eps) break;
    }
    if (i == max_iter) numerical_error("BesselNotConverged", "CF1 failed");

    double rjl = isign * fpmin;
    double rjpl = h * rjl;
    const double rjl1 = rjl, rjp1 = rjpl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = eps;
    const double f = rjpl / rjl;

    // Second continued fraction (complex) for p + iq.
    double a = 0.25 - xmu2, p = -0.5 * xi, q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    fact = a * xi / (p * p + q * q);
    double cr = br + q * fact, ci = bi + p * fact;
    double den = br * br + bi * bi;
    double dr = br / den, di = -bi / den;
    double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < max_iter; ++i) {
        a += 2 * i;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::abs(dlr - 1.0) + std::abs(dli) <= eps) break;
    }
    if (i == max_iter) numerical_error("BesselNotConverged", "CF2 failed");

    const double gam = (p - f) / q;
    double rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    double rymu = rjmu * gam;
    const double rymup = rymu * (p + q / gam);
    double ry1 = xmu * xi * rymu - rymup;

    const double scale = rjmu / rjl;
    BesselJY out;
    out.j = rjl1 * scale;
    out.jp = rjp1 * scale;
    for (int k = 1; k <= nl; ++k) {
        const double rytemp = (xmu + k) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = xnu * xi * rymu - ry1;
    return out;
}

BesselKPair bessel_k_pair(double mu, double x)
{
    if (std::abs(mu) > 0.5 || x < 1.5) numerical_error("DomainError", "bessel_k_pair range");
    const double a1 = 0.25 - mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < max_iter; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    if (i == max_iter) numerical_error("BesselNotConverged", "K continued fraction failed");
    h *= a1;
    BesselKPair out;
    out.k_mu = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
    out.k_mu1 = out.k_mu * (mu + x + 0.5 - h) / x;
    return out;
}

BesselPair bessel_j_pair(double nu, double x)
{
    if (nu < -0.5 || x < 0.0 || !std::isfinite(x)) config_error("DomainError", "bessel_j needs nu >= -1/2, x >= 0");
    if (x == 0.0) {
        if (nu == 0.0) return {1.0, 0.0};
        if (nu < 0.0) numerical_error("DomainError", "J_nu(0) diverges for nu < 0");
        const double jp = nu == 1.0 ? 0.5 : (nu < 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
        return {0.0, jp};
    }
    if (x < 2.0) {
        const Series s = power_series(nu, x);
        const double lead = std::pow(0.5 * x, nu);
        return {lead * s.sum, lead * s.dsum / x};
    }
    if (nu >= 0.0) {
        const BesselJY r = bessel_jy_large(nu, x);
        return {r.j, r.jp};
    }
    const BesselJY up = bessel_jy_large(nu + 1.0, x);
    const double j = up.jp + (nu + 1.0) / x * up.j;
    return {j, nu / x * j - up.j};
}

SpecFunResult bessel_j(double nu, double x)
{
    if (nu < -0.5 || x < 0.0 || !std::isfinite(x)) config_error("DomainError", "bessel_j needs nu >= -1/2, x >= 0");
    if (x > 0.0 && x < 2.0) {
        const Series s = power_series(nu, x);
        const double lead = std::pow(0.5 * x, nu);
        return {lead * s.sum, 4.0 * eps * lead * s.abs_sum};
    }
    const double v = bessel_j_pair(nu, x).j;
    // Continued fractions converge to eps; the normalisation costs a few more.
    return {v, 16.0 * eps * std::max(std::abs(v), 1.0 / std::sqrt(x + 1.0))};
}

double bessel_j_scaled(double nu, double x)
{
    if (nu < -0.5 || x < 0.0) config_error("DomainError", "bessel_j_scaled needs nu >= -1/2, x >= 0");
    if (x < 2.0) return std::pow(0.5, nu) * power_series(nu, x).sum;
    return bessel_j_pair(nu, x).j / std::pow(x, nu);
}

AiryPair airy(double z)
{
    if (!(std::abs(z) <= 1000.0)) config_error("DomainError", "airy argument outside |z| <= 1000");
    constexpr long double ai0 = 0.355028053887817239260063186004183176L;
    constexpr long double aip0 = -0.258819403792806798405183560189203963L;
    if (z >= -6.0 && z <= 2.0) {
        const long double zl = z;
        const long double z3 = zl * zl * zl;
        long double f = 1.0L, g = zl, fp = 0.0L, gp = 1.0L;
        long double t = 1.0L, u = zl, a = zl * zl / 2.0L, bterm = 1.0L;
        fp = a;
        for (int k = 0; k < 200; ++k) {
            t *= z3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
            u *= z3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
            bterm *= z3 / ((3.0L * k + 1.0L) * (3.0L * k + 3.0L));
            if (k > 0) {
                a *= z3 / ((3.0L * k) * (3.0L * k + 2.0L));
                fp += a;
            }
            f += t;
            g += u;
            gp += bterm;
            if (std::abs(t) + std::abs(u) + std::abs(a) + std::abs(bterm) < 1e-22L) break;
        }
        return {static_cast<double>(ai0 * f + aip0 * g), static_cast<double>(ai0 * fp + aip0 * gp)};
    }
    if (z > 2.0) {
        const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
        const BesselKPair k = bessel_k_pair(-1.0 / 3.0, zeta);  // K_{1/3}, K_{2/3}
        return {std::sqrt(z / 3.0) * k.k_mu / pi, -z / (pi * std::sqrt(3.0)) * k.k_mu1};
    }
    const double x = -z;
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (x > 12.0) return airy_oscillatory_asymptotic(x, zeta);
    const BesselJY b13 = bessel_jy_large(1.0 / 3.0, zeta);
    const BesselJY b23 = bessel_jy_large(2.0 / 3.0, zeta);
    const double s3 = std::sqrt(3.0);
    return {0.5 * std::sqrt(x) * (b13.j - b13.y / s3), 0.5 * x * (b23.j + b23.y / s3)};
}

} // namespace scdens
