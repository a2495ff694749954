#include "scdens/profile.hpp"

#include "scdens/error.hpp"

#include <charconv>
#include <cmath>

namespace scdens {

Grid line_grid(double lo, double hi, int count)
{
    if (count < 1) config_error("InvalidGrid", "grid needs at least one point");
    if (!(hi >= lo)) config_error("InvalidGrid", "grid max must not be below min");
    Grid g;
    g.coord.resize(count);
    g.points.resize(count);
    for (int i = 0; i < count; ++i) {
        const double s = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
        g.coord[i] = s;
        g.points[i] = {s, 0.0};
    }
    return g;
}

Grid cut_grid(const Cut& cut, double lo, double hi, int count)
{
    Grid g = line_grid(lo, hi, count);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = g.coord[i];
        switch (cut.kind) {
        case Cut::Kind::AlongX: g.points[i] = {s, cut.value}; break;
        case Cut::Kind::AlongY: g.points[i] = {cut.value, s}; break;
        case Cut::Kind::Ray: g.points[i] = {s, cut.value * s}; break;
        }
    }
    return g;
}

Cut parse_cut(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) config_error("InvalidCut", "cut must look like x=..., y=... or ray=...");
    const std::string key = text.substr(0, eq);
    const std::string val = text.substr(eq + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size() || !std::isfinite(v))
        config_error("InvalidCut", "cut value '" + val + "' is not a number");
    Cut c;
    c.value = v;
    if (key == "y") c.kind = Cut::Kind::AlongX;
    else if (key == "x") c.kind = Cut::Kind::AlongY;
    else if (key == "ray") c.kind = Cut::Kind::Ray;
    else config_error("InvalidCut", "unknown cut key '" + key + "'");
    return c;
}

void finish_xi(DensityProfile& p)
{
    p.xi.resize(p.tau.size());
    for (std::size_t i = 0; i < p.tau.size(); ++i) p.xi[i] = 0.5 * (p.tau[i] + p.tau1[i]);
}

} // namespace scdens
