#pragma once

namespace scdens {

struct SpecFunResult {
    double value = 0.0;
    double est_error = 0.0;  // absolute error estimate
};

struct BesselPair {
    double j = 0.0;   // J_nu(x)
    double jp = 0.0;  // dJ_nu/dx
};

struct BesselJY {
    double j = 0.0, jp = 0.0, y = 0.0, yp = 0.0;
};

struct AiryPair {
    double ai = 0.0;
    double aip = 0.0;
};

// Order nu >= -1/2, argument x >= 0.
SpecFunResult bessel_j(double nu, double x);
BesselPair bessel_j_pair(double nu, double x);

// J_nu(x) / x^nu, finite at x = 0 where it equals 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(double nu, double x);

// J and Y for nu >= 0 and x >= 2 (continued-fraction regime).
BesselJY bessel_jy_large(double nu, double x);

// Modified Bessel K_mu and K_{mu+1} for |mu| <= 1/2, x >= 1.5.
struct BesselKPair {
    double k_mu = 0.0;
    double k_mu1 = 0.0;
};
BesselKPair bessel_k_pair(double mu, double x);

// |z| <= 1000.
AiryPair airy(double z);

double gamma_fn(double x);

} // namespace scdens
