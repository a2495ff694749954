#pragma once

#include "scdens/potentials.hpp"

#include <string>
#include <vector>

namespace scdens {

// Sample positions plus the scalar coordinate used for output and windows.
struct Grid {
    std::vector<double> coord;
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

// A straight line through the plane for 2D systems.
struct Cut {
    enum class Kind { AlongX, AlongY, Ray };
    Kind kind = Kind::AlongX;
    double value = 0.0;  // fixed y (AlongX), fixed x (AlongY) or slope (Ray: y = slope * x)
};

Grid line_grid(double lo, double hi, int count);
Grid cut_grid(const Cut& cut, double lo, double hi, int count);
Cut parse_cut(const std::string& text);  // "y=0.3", "x=0.59", "ray=0.577"

struct Channels {
    double rho = 0.0;
    double tau = 0.0;
    double tau1 = 0.0;
};

struct DensityProfile {
    Grid grid;
    std::vector<double> rho, tau, tau1, xi;
    int particles = 0;
    double lambda = 0.0;
    double lambda_smooth = 0.0;
    double temperature = 0.0;
    double truncation_bound = 0.0;  // thermal tail estimate, 0 when cold
};

// xi is always assembled as the average of tau and tau1.
void finish_xi(DensityProfile& profile);

} // namespace scdens
