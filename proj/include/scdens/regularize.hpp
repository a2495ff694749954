#pragma once

#include "scdens/potentials.hpp"

namespace scdens {

// Centre (caustic) form of the radial-orbit density oscillation, nu = D/2 - 1.
// `shells` is the number of filled main shells M_s (for 1D: filled levels).
double center_bessel(const PotentialModel& model, double lambda, double t_r1, int shells, double r);
// Same with T_r1 taken as the full radial period at lambda.
double center_bessel(const PotentialModel& model, double lambda, int shells, double r);

// Linearised turning point of a smooth 1D or radial potential.
struct TurningPointLinearization {
    double slope = 0.0;         // a = V'(x_lambda) > 0
    double turning_point = 0.0; // x_lambda
    double sigma = 0.0;         // (2 m a / hbar^2)^{1/3}; z = sigma (x - x_lambda)
    double rho0 = 0.0;          // 2 sigma
};

TurningPointLinearization linearize(const PotentialModel& model, double lambda);

// Uniform argument: -(3 S_+ / 4 hbar)^{2/3} inside, +(3 * 2 int |p| / 4 hbar)^{2/3} outside.
double uniform_argument(const PotentialModel& model, double lambda, double s);

struct AiryDensities {
    double rho = 0.0, tau = 0.0, xi = 0.0;        // full linear-potential densities
    double drho = 0.0, dtau = 0.0, dxi = 0.0;     // with the linearised TF part removed
};

// Linear-potential densities at Airy argument z for slope a (spin included).
AiryDensities airy_linear(double slope, double z, const PotentialModel& model);

// 1D uniform approximation near the turning point (|x| used for symmetric wells).
AiryDensities airy_uniform_1d(const PotentialModel& model, double lambda, double x);

// D = 3 radial particle density near r_lambda (rho: full, drho: oscillating).
AiryDensities airy_uniform_radial(const PotentialModel& model, double lambda, double r);

// 2D billiard wall at distance d with curvature radius R (negative for a convex wall).
double boundary_friedel_2d(double p_lambda, double d, double curvature_radius, double hbar = 1.0, int spin = 2);

// Primitive '+' orbit near the wall of a D-dimensional spherical billiard.
double boundary_friedel_sphere(const PotentialModel& model, double lambda, double r);

// Surface term of the Weyl particle number (negative).
double weyl_surface_term(const PotentialModel& model, double lambda);

// Volume integral of boundary_friedel_sphere over the ball.
double boundary_friedel_particle_number(const PotentialModel& model, double lambda);

} // namespace scdens
