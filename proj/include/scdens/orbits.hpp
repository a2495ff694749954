#pragma once

#include "scdens/exec.hpp"
#include "scdens/potentials.hpp"
#include "scdens/profile.hpp"
#include "scdens/smooth_tf.hpp"

#include <span>
#include <string>
#include <vector>

namespace scdens {

// '+' / '-' radial orbits carry the repetition k in `first`; rectangle
// families 'a', 'b', 'c' carry the image indices (k_x, k_y).
struct OrbitTag {
    char family = '+';
    int first = 0;
    int second = 0;
};

std::string to_string(const OrbitTag& tag);

struct ClosedOrbit {
    double action = 0.0;
    double period = 0.0;
    int morse = 0;
    double det_perp = 1.0;   // |D_perp| at r' = r
    double mismatch = -1.0;  // Q = cos(angle between p and p')
    OrbitTag tag;
};

struct LocalOscillation {
    double rho = 0.0;
    double tau = 0.0;
    double tau1 = 0.0;
    double xi = 0.0;
};

struct OscillatingDensities {
    Grid grid;
    std::vector<double> rho, tau, tau1, xi;
    double lambda = 0.0;

    void resize(std::size_t n);
    void set(std::size_t i, const LocalOscillation& v);
};

// Closed-orbit sum at one point. With temperature > 0 every orbit is damped by
// its modulation factor.
LocalOscillation assemble(std::span<const ClosedOrbit> orbits, double lambda, Point p, const PotentialModel& model,
                          double temperature = 0.0);

// Contribution of each orbit separately (same order as the input).
std::vector<LocalOscillation> orbit_terms(std::span<const ClosedOrbit> orbits, double lambda, Point p,
                                          const PotentialModel& model);

// '+' and '-' orbits with k = 0..k_max through the point s of a 1D or radial system.
std::vector<ClosedOrbit> radial_orbits(const PotentialModel& model, double lambda, double s, int k_max);

// Smooth 1D potentials, the box and the ramp.
LocalOscillation delta_rho_1d(const PotentialModel& model, double lambda, double x, int k_max);

struct RadialSumOptions {
    int k_max = 15;
    double caustic_c = 8.0;  // raw sum only for r >= caustic_c * hbar / p_lambda; 0 disables the check
};

LocalOscillation delta_rho_iho(const PotentialModel& model, double lambda, double r, const RadialSumOptions& opt = {});

// Rectangle billiard images with (k_x, k_y) in [-K, K]^2 and length <= max_length.
std::vector<ClosedOrbit> rect_orbits(const PotentialModel& model, double lambda, Point p, int K, double max_length);

// K and the length cut for which the longest orbit's amplitude L^{-3/2} is
// below `ratio` times that of an orbit of the shorter side length.
struct ImageCutoff {
    int K = 0;
    double max_length = 0.0;
};
ImageCutoff default_image_cutoff(const PotentialModel& model, double ratio = 1e-4);

// Closed-form image sum (rows of the tabulated amplitudes) at one point.
LocalOscillation rect_tabulated(const PotentialModel& model, double lambda, Point p, const ImageCutoff& cut);

// Grid drivers, parallel over points.
OscillatingDensities scl_profile_1d(const PotentialModel& model, double lambda, const Grid& grid, int k_max,
                                    Exec exec = Exec::Parallel);
OscillatingDensities scl_profile_iho(const PotentialModel& model, double lambda, const Grid& grid,
                                     const RadialSumOptions& opt = {}, Exec exec = Exec::Parallel);
OscillatingDensities scl_profile_rect(const PotentialModel& model, double lambda, const Grid& grid,
                                      const ImageCutoff& cut, Exec exec = Exec::Parallel);

struct LvtStats {
    std::vector<double> residual;  // delta_tau - (lambda - V) delta_rho on the full grid
    double max_abs = 0.0;          // over the window, divided by max |delta_tau| there
    double rms = 0.0;              // over the window, divided by max |delta_tau| there
    double rms_ratio = 0.0;        // RMS(residual) / RMS(delta_tau) over the window
};

LvtStats lvt_residual(const OscillatingParts& parts, const PotentialModel& model, double lambda, const Grid& grid,
                      const Window& window);

// Oscillating level density of a smooth 1D potential (one spin state).
double trace_formula_1d(const PotentialModel& model, double energy, int k_max);

} // namespace scdens
