#pragma once

#include "scdens/quantum.hpp"

namespace scdens::detail {

// What a caller needs from a spectrum: at least this many table entries,
// this many single-particle states, and every level up to this energy.
struct Need {
    std::size_t levels = 0;
    double states = 0.0;
    double energy = -1e300;
};

std::unique_ptr<Eigensystem> make_box(const PotentialModel& m, const Need& need);
std::unique_ptr<Eigensystem> make_rect(const PotentialModel& m, const Need& need);
std::unique_ptr<Eigensystem> make_oscillator(const PotentialModel& m, const Need& need);
std::unique_ptr<Eigensystem> make_sphere(const PotentialModel& m, const Need& need);
std::unique_ptr<Eigensystem> make_quartic(const PotentialModel& m, const Need& need);
std::unique_ptr<Eigensystem> make_coupled_quartic(const PotentialModel& m, const Need& need);

std::unique_ptr<Eigensystem> make(const PotentialModel& m, const Need& need);

// Hyperspherical harmonics of degree l in D dimensions.
long long angular_multiplicity(int l, int dim);
double unit_sphere_area(int dim);

// True when the first `count` entries of `levels` already satisfy `need`
// and at least one strictly higher level follows.
bool satisfied(const SpectrumTable& levels, const Need& need);

} // namespace scdens::detail
