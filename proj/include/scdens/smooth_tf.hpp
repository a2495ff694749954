#pragma once

#include "scdens/potentials.hpp"
#include "scdens/profile.hpp"

#include <string>
#include <vector>

namespace scdens {

enum class SmoothKind { TF, WeylBilliard };

struct SmoothReference {
    SmoothKind kind = SmoothKind::TF;
    double lambda = 0.0;  // energy the TF forms were evaluated at
    std::vector<double> rho_tf, tau_tf;
};

// Zero outside the classically allowed region.
double tf_density(const PotentialModel& model, double lambda, Point p);
double tf_kinetic(const PotentialModel& model, double lambda, Point p);

// TF kinetic-energy functional of a local density in D dimensions.
double tf_functional(double rho, int dim, int spin = 2, double hbar = 1.0, double mass = 1.0);
double tf_functional(const PotentialModel& model, double rho);

// Integral of rho_TF over the allowed region.
double tf_particle_number(const PotentialModel& model, double lambda);

// Pure TF (volume term) normalisation.
double tf_lambda(const PotentialModel& model, double particles);

// Billiards: volume plus surface Weyl terms.
double weyl_particle_number(const PotentialModel& model, double lambda);
double weyl_lambda(const PotentialModel& model, double particles);

SmoothReference smooth_reference(const PotentialModel& model, double lambda, const Grid& grid);

struct OscillatingParts {
    std::vector<double> rho, tau, tau1, xi;
    SmoothKind reference = SmoothKind::TF;
    bool detrended = false;
};

OscillatingParts decompose(const DensityProfile& profile, const SmoothReference& ref);

// Least-squares polynomial in coord^2 (even = true) or coord fitted over
// [fit_lo, fit_hi] and evaluated on every grid coordinate. This is a purely
// numerical refinement of the smooth reference, not part of the TF theory.
std::vector<double> polynomial_trend(const std::vector<double>& coord, const std::vector<double>& values,
                                     double fit_lo, double fit_hi, int degree, bool even);

// Interior window r <= eta * r_lambda, as a coordinate interval.
struct Window {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double s) const { return s >= lo && s <= hi; }
};

} // namespace scdens
