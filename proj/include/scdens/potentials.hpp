#pragma once

#include <optional>
#include <string>

namespace scdens {

enum class SystemKind {
    Box1D,
    Quartic1D,
    Linear1D,
    IHO,
    RectBilliard,
    SphereBilliard,
    CircleBilliard,
    CoupledQuartic2D,
};

// One entry of the system catalogue. Only the fields relevant to `kind` are
// read. Smooth potentials default to hbar = m = 1; billiards use
// hbar^2 = 2m = 1.
struct PotentialModel {
    SystemKind kind = SystemKind::Box1D;
    int dim = 1;
    double length = 1.0;  // box side, or billiard radius
    double slope = 1.0;   // linear ramp
    double omega = 1.0;
    double qx = 1.0, qy = 1.0;
    double kappa = 0.6;
    double mass = 1.0;
    double hbar = 1.0;
    int spin = 2;  // spin degeneracy g_s, 1 or 2
};

PotentialModel box1d(double length);
PotentialModel quartic1d();
PotentialModel linear1d(double slope);
PotentialModel iho(int dim, double omega = 1.0);
PotentialModel rect_billiard(double qx, double qy);
PotentialModel sphere_billiard(int dim, double radius);
PotentialModel circle_billiard(double radius);
PotentialModel coupled_quartic(double kappa);

void validate(const PotentialModel& model);
std::string system_name(SystemKind kind);
std::optional<SystemKind> parse_system(const std::string& name);

bool is_billiard(const PotentialModel& model);
bool is_radial(const PotentialModel& model);  // IHO, sphere and circle billiards
bool is_one_dimensional(const PotentialModel& model);

// Position in the plane. Radial systems use r = |(x, y)|; 1D systems use x.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

double evaluate(const PotentialModel& model, Point p);
double classical_momentum(const PotentialModel& model, double lambda, Point p);

// Outer turning point of the 1D or radial motion (x > 0 side); wall for billiards.
double turning_point(const PotentialModel& model, double lambda);
// Turning point along the ray through the origin with direction (cx, cy).
double turning_point_along(const PotentialModel& model, double lambda, double cx, double cy);

// V(s) along the 1D coordinate (or radius) and its derivative.
double profile_potential(const PotentialModel& model, double s);
double profile_slope(const PotentialModel& model, double s);

enum class OrbitSign { Plus, Minus };

struct RadialOrbitSpec {
    OrbitSign sign = OrbitSign::Plus;
    int k = 0;
    double action = 0.0;
    double period = 0.0;
    int morse = 0;
};

// Closed forms for IHO, linear ramp and box; quadrature for other smooth
// potentials. Empty when the orbit does not exist (linear ramp beyond k = 0).
std::optional<RadialOrbitSpec> radial_orbit(const PotentialModel& model, double lambda, double r, OrbitSign sign, int k);

// Always by quadrature (smooth potentials only); used to cross-check closed forms.
RadialOrbitSpec radial_orbit_numeric(const PotentialModel& model, double lambda, double r, OrbitSign sign, int k);

struct ActionPeriod {
    double action = 0.0;
    double period = 0.0;
};

// Action 2 * int p ds and its energy derivative between a and b, where either
// endpoint may be a turning point.
ActionPeriod twice_action(const PotentialModel& model, double lambda, double a, double b);

// One full radial (or 1D) oscillation at energy lambda.
ActionPeriod full_period(const PotentialModel& model, double lambda);

} // namespace scdens
