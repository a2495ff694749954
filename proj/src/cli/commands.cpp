#include "commands.hpp"

#include "scdens/error.hpp"
#include "scdens/orbits.hpp"
#include "scdens/quantum.hpp"
#include "scdens/regularize.hpp"
#include "scdens/smooth_tf.hpp"
#include "scdens/thermal.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numbers>

namespace scdens::cli {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

enum Branch { None = -1, Orbit = 0, Center = 1, Airy = 2, Wall = 3 };

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

nlohmann::json sidecar(const RunConfig& cfg, const std::string& command)
{
    nlohmann::json j;
    j["command"] = command;
    j["config"] = cfg.echo();
    j["config_hash"] = fnv1a(cfg.echo().dump());
    j["version"] = "scdens 0.1.0";
    return j;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double coordinate_of(const PotentialModel& m, Point p) { return is_radial(m) ? std::hypot(p.x, p.y) : p.x; }

std::vector<double> potential_on(const PotentialModel& m, const Grid& g)
{
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = evaluate(m, g.points[i]);
    return v;
}

// Integral of rho over the sampled line (1D) or radial profile (trapezoid).
std::optional<double> grid_integral(const PotentialModel& m, const Grid& g, const std::vector<double>& rho)
{
    if (g.size() < 2) return std::nullopt;
    const bool radial = is_radial(m) && m.dim > 1;
    if (!radial && m.dim != 1) return std::nullopt;
    const double shell = radial ? 2.0 * std::pow(std::numbers::pi, 0.5 * m.dim) / std::tgamma(0.5 * m.dim) : 1.0;
    double sum = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        auto f = [&](std::size_t k) { return rho[k] * (radial ? shell * std::pow(g.coord[k], m.dim - 1) : 1.0); };
        sum += 0.5 * (g.coord[i] - g.coord[i - 1]) * (f(i) + f(i - 1));
    }
    return sum;
}

Window interior_window(const RunConfig& cfg, const RunContext& ctx, const PotentialModel& m)
{
    if (cfg.window) return *cfg.window;
    if (is_billiard(m)) return {ctx.grid.coord.front(), ctx.grid.coord.back()};
    const double xl = m.dim == 1 || is_radial(m) ? turning_point(m, ctx.lambda_smooth)
                                                 : turning_point_along(m, ctx.lambda_smooth, 1.0, 0.0);
    return {m.kind == SystemKind::Linear1D ? ctx.grid.coord.front() : -cfg.eta * xl, cfg.eta * xl};
}

int default_kmax(const PotentialModel& m) { return m.kind == SystemKind::IHO && m.dim > 1 ? 15 : 50; }

} // namespace

RunContext prepare(const RunConfig& cfg, bool need_particles)
{
    validate_config(cfg);
    const PotentialModel& m = cfg.model;
    RunContext ctx;
    if (!cfg.grid) config_error("MissingGrid", "--grid min:max:count is required");
    ctx.grid = cfg.cut ? cut_grid(parse_cut(*cfg.cut), cfg.grid->lo, cfg.grid->hi, cfg.grid->count)
                       : line_grid(cfg.grid->lo, cfg.grid->hi, cfg.grid->count);
    if (m.kind == SystemKind::Linear1D) {
        if (!cfg.lambda) config_error("MissingLambda", "the linear ramp needs lambda (a continuum has no N)");
        ctx.lambda = ctx.lambda_smooth = *cfg.lambda;
        return ctx;
    }
    if (cfg.shells) {
        const long long n = closed_shell_N(m, *cfg.shells);
        if (n > std::numeric_limits<int>::max()) config_error("InvalidShells", "too many shells");
        if (cfg.particles && *cfg.particles != n)
            config_error("InconsistentInput", "n and shells disagree (shells give N = " + std::to_string(n) + ")");
        ctx.particles = static_cast<int>(n);
        ctx.shells = *cfg.shells;
    } else if (cfg.particles) {
        ctx.particles = *cfg.particles;
    } else if (need_particles) {
        config_error("MissingParticles", "--n (or --shells for the oscillator) is required");
    }
    if (ctx.particles > 0) {
        const FermiData f = fermi(m, ctx.particles);
        ctx.lambda = f.lambda;
        ctx.lambda_smooth = f.lambda_smooth;
        if (m.kind == SystemKind::IHO && ctx.shells == 0) {
            for (int s = 1; closed_shell_N(m, s) <= ctx.particles; ++s)
                if (closed_shell_N(m, s) == ctx.particles) ctx.shells = s;
        } else if (m.kind != SystemKind::IHO) {
            ctx.shells = ctx.particles / m.spin;
        }
    }
    return ctx;
}

Table density_table(const RunConfig& cfg, const RunContext& ctx, nlohmann::json& meta)
{
    const PotentialModel& m = cfg.model;
    const DensityProfile prof = m.kind == SystemKind::Linear1D ? linear_ramp_densities(m, ctx.lambda, ctx.grid)
                                                               : densities(m, ctx.particles, ctx.grid);
    const SmoothReference ref = smooth_reference(m, ctx.lambda_smooth, ctx.grid);
    OscillatingParts parts = decompose(prof, ref);
    if (cfg.detrend_degree >= 0) {
        const double xl = turning_point(m, ctx.lambda_smooth);
        const Window fit = cfg.window ? *cfg.window : Window{0.3 * xl, 0.7 * xl};
        const auto trend = polynomial_trend(ctx.grid.coord, parts.rho, fit.lo, fit.hi, cfg.detrend_degree, true);
        for (std::size_t i = 0; i < trend.size(); ++i) parts.rho[i] -= trend[i];
        parts.detrended = true;
        meta["detrend_window"] = {fit.lo, fit.hi};
    }
    const auto v = potential_on(m, ctx.grid);
    std::vector<double> lvt(ctx.grid.size()), tf_of_rho(ctx.grid.size());
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
        lvt[i] = (ctx.lambda_smooth - v[i]) * parts.rho[i];
        tf_of_rho[i] = tf_functional(m, std::max(0.0, prof.rho[i]));
    }
    Table t;
    t.add("coordinate", ctx.grid.coord);
    t.add("rho_qm", prof.rho);
    t.add("tau_qm", prof.tau);
    t.add("tau1_qm", prof.tau1);
    t.add("xi_qm", prof.xi);
    t.add("rho_tf", ref.rho_tf);
    t.add("tau_tf", ref.tau_tf);
    t.add("delta_rho_qm", parts.rho);
    t.add("delta_tau_qm", parts.tau);
    t.add("delta_tau1_qm", parts.tau1);
    t.add("delta_xi_qm", parts.xi);
    t.add("lvt_rhs_qm", lvt);
    t.add("tau_tf_of_rho", tf_of_rho);
    meta["lambda"] = ctx.lambda;
    meta["lambda_smooth"] = ctx.lambda_smooth;
    meta["particles"] = ctx.particles;
    meta["smooth_reference"] = ref.kind == SmoothKind::WeylBilliard ? "weyl" : "tf";
    meta["detrended"] = parts.detrended;
    const Window w = interior_window(cfg, ctx, m);
    meta["interior_window"] = {w.lo, w.hi};
    if (auto n = grid_integral(m, ctx.grid, prof.rho)) meta["rho_integral"] = *n;
    return t;
}

Table scl_table(const RunConfig& cfg, const RunContext& ctx, nlohmann::json& meta)
{
    const PotentialModel& m = cfg.model;
    const double lam = ctx.lambda_smooth;
    const std::size_t n = ctx.grid.size();
    std::vector<double> rho(n, nan), tau(n, nan), tau1(n, nan), xi(n, nan), center(n, nan), branch(n, None);
    const int k_max = cfg.k_max.value_or(default_kmax(m));
    ImageCutoff cut;
    if (m.kind == SystemKind::RectBilliard) {
        cut = default_image_cutoff(m, cfg.image_ratio);
        if (cfg.images > 0) cut.K = cfg.images;
        meta["images"] = {{"K", cut.K}, {"max_length", cut.max_length}};
    } else if (m.kind == SystemKind::CoupledQuartic2D) {
        config_error("Unsupported", "no closed-orbit catalogue for the coupled quartic oscillator");
    }
    const double p_lambda = std::sqrt(2.0 * m.mass * lam);
    const bool smooth = !is_billiard(m);
    const double xl = smooth ? turning_point(m, lam) : 0.0;
    const bool with_center = smooth && m.kind != SystemKind::Linear1D && ctx.shells > 0;

    for_each_index(Exec::Parallel, n, [&](std::size_t i) {
        const Point pt = ctx.grid.points[i];
        const double s = coordinate_of(m, pt);
        auto put = [&](const LocalOscillation& v, Branch b) {
            rho[i] = v.rho;
            tau[i] = v.tau;
            tau1[i] = v.tau1;
            xi[i] = v.xi;
            branch[i] = b;
        };
        try {
            if (with_center) center[i] = center_bessel(m, lam, ctx.shells, s);
            if (m.kind == SystemKind::RectBilliard) {
                put(assemble(rect_orbits(m, lam, pt, cut.K, cut.max_length), lam, pt, m), Orbit);
            } else if (m.kind == SystemKind::SphereBilliard || m.kind == SystemKind::CircleBilliard) {
                rho[i] = boundary_friedel_sphere(m, lam, s);
                branch[i] = Wall;
            } else if (m.kind == SystemKind::Box1D) {
                if (s <= 0.0 || s >= m.length) {
                    rho[i] = boundary_friedel_sphere(m, lam, s);
                    branch[i] = Wall;
                } else {
                    put(delta_rho_1d(m, lam, s, k_max), Orbit);
                }
            } else if (std::abs(s) >= cfg.surface_switch * xl) {
                if (m.dim == 1) {
                    const AiryDensities a = airy_uniform_1d(m, lam, s);
                    put({a.drho, a.dtau, 2.0 * a.dxi - a.dtau, a.dxi}, Airy);
                } else if (m.dim == 3) {
                    rho[i] = airy_uniform_radial(m, lam, s).drho;
                    branch[i] = Airy;
                }
            } else if (m.dim > 1 && std::abs(s) < cfg.caustic_c * m.hbar / p_lambda) {
                rho[i] = center[i];
                branch[i] = Center;
            } else if (m.dim == 1) {
                put(delta_rho_1d(m, lam, s, k_max), Orbit);
            } else {
                put(delta_rho_iho(m, lam, s, {k_max, cfg.caustic_c}), Orbit);
            }
        } catch (const Error&) {
            // Left as NaN with branch -1: no formula applies at this point.
        }
    });
    std::vector<double> rho_tf(n);
    for (std::size_t i = 0; i < n; ++i) rho_tf[i] = tf_density(m, lam, ctx.grid.points[i]);
    Table t;
    t.add("coordinate", ctx.grid.coord);
    t.add("rho_tf", rho_tf);
    t.add("delta_rho_scl", rho);
    t.add("delta_tau_scl", tau);
    t.add("delta_tau1_scl", tau1);
    t.add("delta_xi_scl", xi);
    t.add("delta_rho_center", center);
    t.add("branch", branch);
    meta["lambda_smooth"] = lam;
    meta["kmax"] = k_max;
    meta["caustic_radius"] = m.dim > 1 && smooth ? cfg.caustic_c * m.hbar / p_lambda : 0.0;
    meta["surface_switch_point"] = smooth ? cfg.surface_switch * xl : 0.0;
    meta["branches"] = {{"-1", "none"}, {"0", "orbit sum"}, {"1", "centre Bessel"}, {"2", "Airy"}, {"3", "wall"}};
    return t;
}

int cmd_levels(const RunConfig& cfg)
{
    validate_config(cfg);
    Stopwatch sw;
    const PotentialModel& m = cfg.model;
    nlohmann::json meta = sidecar(cfg, "levels");
    std::size_t count = 50;
    if (cfg.shells || cfg.particles) {
        RunConfig c = cfg;
        if (!c.grid) c.grid = GridSpec{0.0, 0.0, 1};
        const RunContext ctx = prepare(c);
        const FermiData f = fermi(m, ctx.particles);
        count = static_cast<std::size_t>(f.filled_levels) + 10;
        meta["lambda"] = f.lambda;
        meta["lambda_smooth"] = f.lambda_smooth;
        meta["particles"] = ctx.particles;
    }
    const SpectrumTable levels = spectrum(m, count);
    Table t;
    std::vector<double> idx, e, g, q0, q1, cum;
    double total = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        total += m.spin * levels[i].degeneracy;
        idx.push_back(static_cast<double>(i));
        e.push_back(levels[i].energy);
        g.push_back(levels[i].degeneracy);
        q0.push_back(levels[i].qn[0]);
        q1.push_back(levels[i].qn[1]);
        cum.push_back(total);
    }
    t.add("index", idx);
    t.add("energy", e);
    t.add("degeneracy", g);
    t.add("qn1", q0);
    t.add("qn2", q1);
    t.add("cumulative_n", cum);
    meta["wall_seconds"] = sw.seconds();
    write_outputs(output_stem(cfg.out), t, meta);
    return 0;
}

int cmd_density(const RunConfig& cfg)
{
    Stopwatch sw;
    const RunContext ctx = prepare(cfg);
    nlohmann::json meta = sidecar(cfg, "density");
    const Table t = density_table(cfg, ctx, meta);
    meta["wall_seconds"] = sw.seconds();
    write_outputs(output_stem(cfg.out), t, meta);
    return 0;
}

int cmd_scl(const RunConfig& cfg)
{
    Stopwatch sw;
    const RunContext ctx = prepare(cfg);
    nlohmann::json meta = sidecar(cfg, "scl");
    const Table t = scl_table(cfg, ctx, meta);
    meta["wall_seconds"] = sw.seconds();
    write_outputs(output_stem(cfg.out), t, meta);
    return 0;
}

int cmd_thermal(const RunConfig& cfg)
{
    Stopwatch sw;
    const RunContext ctx = prepare(cfg);
    const PotentialModel& m = cfg.model;
    if (m.kind == SystemKind::Linear1D) config_error("Unsupported", "thermal runs need a discrete spectrum");
    nlohmann::json meta = sidecar(cfg, "thermal");
    const double temp = cfg.temperature;
    const ThermalState st = solve_mu(m, ctx.particles, temp);
    const DensityProfile prof = hot_densities(m, ctx.particles, temp, ctx.grid);
    const SmoothReference ref = smooth_reference(m, ctx.lambda_smooth, ctx.grid);
    const OscillatingParts parts = decompose(prof, ref);

    const std::size_t n = ctx.grid.size();
    std::vector<double> drho(n, nan), dtau(n, nan), dtau1(n, nan);
    const bool has_orbits = m.kind == SystemKind::RectBilliard || m.kind == SystemKind::Box1D ||
                            m.kind == SystemKind::Quartic1D || m.kind == SystemKind::IHO;
    if (has_orbits) {
        const int k_max = cfg.k_max.value_or(default_kmax(m));
        for_each_index(Exec::Parallel, n, [&](std::size_t i) {
            try {
                Grid one;
                one.coord = {ctx.grid.coord[i]};
                one.points = {ctx.grid.points[i]};
                const auto v = hot_delta_densities(m, ctx.lambda_smooth, one, temp, k_max, Exec::Serial);
                // Wall points of the box have zero-length orbits; leave them blank.
                if (std::isfinite(v.rho[0]) && std::isfinite(v.tau[0]) && std::isfinite(v.tau1[0])) {
                    drho[i] = v.rho[0];
                    dtau[i] = v.tau[0];
                    dtau1[i] = v.tau1[0];
                }
            } catch (const Error&) {
            }
        });
    }
    Table t;
    t.add("coordinate", ctx.grid.coord);
    t.add("rho_qm", prof.rho);
    t.add("tau_qm", prof.tau);
    t.add("tau1_qm", prof.tau1);
    t.add("xi_qm", prof.xi);
    t.add("rho_tf", ref.rho_tf);
    t.add("delta_rho_qm", parts.rho);
    t.add("delta_tau_qm", parts.tau);
    t.add("delta_tau1_qm", parts.tau1);
    t.add("delta_rho_scl", drho);
    t.add("delta_tau_scl", dtau);
    t.add("delta_tau1_scl", dtau1);
    meta["temperature"] = temp;
    meta["mu"] = st.mu;
    meta["free_energy"] = st.free_energy;
    meta["entropy"] = st.entropy;
    meta["particles_avg"] = st.particles;
    meta["tail_occupation"] = st.tail_occupation;
    meta["lambda_smooth"] = ctx.lambda_smooth;
    if (auto integral = grid_integral(m, ctx.grid, prof.rho)) meta["rho_integral"] = *integral;
    meta["wall_seconds"] = sw.seconds();
    write_outputs(output_stem(cfg.out), t, meta);
    return 0;
}

int cmd_figure(RunConfig cfg, const std::string& id)
{
    Stopwatch sw;
    apply_preset(cfg, id);
    const RunContext ctx = prepare(cfg);
    const PotentialModel& m = cfg.model;
    nlohmann::json meta = sidecar(cfg, "figure " + id);
    nlohmann::json dmeta, smeta;
    const Table qm = density_table(cfg, ctx, dmeta);
    meta["density"] = dmeta;
    auto col = [](const Table& t, const std::string& name) { return *t.find(name); };
    auto scaled = [](std::vector<double> v, double f) {
        for (double& x : v) x *= f;
        return v;
    };
    Table out;
    out.add(is_radial(m) ? "r" : (cfg.cut && cfg.cut->starts_with("x=") ? "y" : "x"), ctx.grid.coord);

    if (id == "fig1" || id == "fig13") {
        const double f = std::pow(static_cast<double>(ctx.particles), -5.0 / 3.0);
        out.add("tau", scaled(col(qm, "tau_qm"), f));
        if (id == "fig1") {
            out.add("tau1", scaled(col(qm, "tau1_qm"), f));
            out.add("xi", scaled(col(qm, "xi_qm"), f));
            out.add("xi_tf", scaled(col(qm, "tau_tf"), f));
        } else {
            out.add("tau_tf_of_rho", scaled(col(qm, "tau_tf_of_rho"), f));
        }
    } else if (id == "fig2") {
        out.add("lvt_rhs_qm", col(qm, "lvt_rhs_qm"));
        out.add("delta_tau_qm", col(qm, "delta_tau_qm"));
        out.add("delta_tau1_qm", col(qm, "delta_tau1_qm"));
        out.add("delta_xi_qm", col(qm, "delta_xi_qm"));
    } else if (id == "fig12") {
        out.add("tau_qm", col(qm, "tau_qm"));
        out.add("tau_tf_of_rho", col(qm, "tau_tf_of_rho"));
    } else {
        const Table scl = scl_table(cfg, ctx, smeta);
        meta["scl"] = smeta;
        if (id == "fig3") {
            out.add("delta_rho_qm", col(qm, "delta_rho_qm"));
            out.add("delta_rho_scl", col(scl, "delta_rho_scl"));
            out.add("delta_rho_center", col(scl, "delta_rho_center"));
            out.add("delta_tau_qm", col(qm, "delta_tau_qm"));
            out.add("minus_delta_tau1_qm", scaled(col(qm, "delta_tau1_qm"), -1.0));
            out.add("lvt_rhs_qm", col(qm, "lvt_rhs_qm"));
        } else if (id == "fig4") {
            std::vector<double> r3(ctx.grid.size());
            for (std::size_t i = 0; i < r3.size(); ++i) r3[i] = std::pow(ctx.grid.coord[i], 3);
            auto times_r3 = [&](std::vector<double> v) {
                for (std::size_t i = 0; i < v.size(); ++i) v[i] *= r3[i];
                return v;
            };
            out.add("r3_delta_rho_qm", times_r3(col(qm, "delta_rho_qm")));
            out.add("r3_delta_rho_scl", times_r3(col(scl, "delta_rho_scl")));
            out.add("r3_delta_rho_center", times_r3(col(scl, "delta_rho_center")));
        } else if (id == "fig6") {
            for (const char* c : {"delta_rho", "delta_tau", "delta_tau1"}) {
                out.add(std::string(c) + "_qm", col(qm, std::string(c) + "_qm"));
                out.add(std::string(c) + "_scl", col(scl, std::string(c) + "_scl"));
            }
        } else if (id == "fig8" || id == "fig9" || id == "fig10") {
            // Airy forms on every grid point, independent of the hand-over radius.
            const std::size_t n = ctx.grid.size();
            std::vector<double> a_rho(n), a_tau(n), a_xi(n), a_total(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double s = ctx.grid.coord[i];
                const AiryDensities a = m.dim == 1 ? airy_uniform_1d(m, ctx.lambda_smooth, s)
                                                   : airy_uniform_radial(m, ctx.lambda_smooth, s);
                a_rho[i] = a.drho;
                a_tau[i] = a.dtau;
                a_xi[i] = a.dxi;
                a_total[i] = a.rho;
            }
            if (id == "fig8") {
                out.add("delta_rho_qm", col(qm, "delta_rho_qm"));
                out.add("delta_rho_airy", a_rho);
                out.add("delta_tau_qm", col(qm, "delta_tau_qm"));
                out.add("delta_tau_airy", a_tau);
                out.add("delta_xi_qm", col(qm, "delta_xi_qm"));
                out.add("delta_xi_airy", a_xi);
            } else if (id == "fig9") {
                out.add("delta_rho_qm", col(qm, "delta_rho_qm"));
                out.add("delta_rho_airy", a_rho);
            } else {
                std::vector<double> total = col(scl, "delta_rho_scl");
                const auto& branch = col(scl, "branch");
                const auto& tf = col(scl, "rho_tf");
                for (std::size_t i = 0; i < n; ++i)
                    total[i] = branch[i] == double(Orbit) || branch[i] == double(Center) ? tf[i] + total[i] : nan;
                out.add("rho_qm", col(qm, "rho_qm"));
                out.add("rho_scl", total);
                out.add("rho_airy", a_total);
            }
        } else {
            config_error("UnknownFigure", "unknown figure '" + id + "'");
        }
    }
    meta["wall_seconds"] = sw.seconds();
    write_outputs(output_stem(cfg.out), out, meta);
    return 0;
}

int cmd_compare(const RunConfig& cfg, const std::string& file_a, const std::string& file_b)
{
    const Table a = read_csv(file_a);
    const Table b = read_csv(file_b);
    if (a.names.empty() || b.names.empty()) mismatch_error("EmptyInput", "no columns");
    const auto& ca = a.columns.front();
    const auto& cb = b.columns.front();
    if (ca.size() != cb.size()) mismatch_error("GridMismatch", "files have different numbers of rows");
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (std::abs(ca[i] - cb[i]) > 1e-12 * std::max(1.0, std::abs(ca[i])))
            mismatch_error("GridMismatch", "coordinates differ at row " + std::to_string(i + 1));

    auto base = [](std::string s) {
        for (const char* suffix : {"_qm", "_scl"})
            if (s.ends_with(suffix)) return s.substr(0, s.size() - std::char_traits<char>::length(suffix));
        return s;
    };
    std::vector<std::pair<std::string, std::string>> pairs = cfg.channels;
    if (pairs.empty()) {
        for (std::size_t i = 1; i < a.names.size(); ++i)
            for (std::size_t j = 1; j < b.names.size(); ++j)
                if (a.names[i] != "branch" && base(a.names[i]) == base(b.names[j]))
                    pairs.emplace_back(a.names[i], b.names[j]);
    }
    if (pairs.empty()) mismatch_error("NoCommonChannels", "no channels to compare");

    const Window w = cfg.window.value_or(Window{ca.front(), ca.back()});
    nlohmann::json report;
    report["window"] = {w.lo, w.hi};
    report["files"] = {file_a, file_b};
    bool pass = true;
    for (const auto& [na, nb] : pairs) {
        const auto* va = a.find(na);
        const auto* vb = b.find(nb);
        if (!va || !vb) mismatch_error("MissingChannel", "channel '" + (va ? nb : na) + "' not found");
        double ss_d = 0.0, ss_a = 0.0, max_d = 0.0, max_a = 0.0;
        std::size_t used = 0, skipped = 0;
        for (std::size_t i = 0; i < ca.size(); ++i) {
            if (!w.contains(ca[i])) continue;
            if (std::isnan((*va)[i]) || std::isnan((*vb)[i])) {
                ++skipped;
                continue;
            }
            const double d = (*vb)[i] - (*va)[i];
            ss_d += d * d;
            ss_a += (*va)[i] * (*va)[i];
            max_d = std::max(max_d, std::abs(d));
            max_a = std::max(max_a, std::abs((*va)[i]));
            ++used;
        }
        if (used == 0) mismatch_error("EmptyWindow", "no comparable points for '" + na + "' in the window");
        nlohmann::json m;
        m["rms_abs"] = std::sqrt(ss_d / used);
        m["rms_rel"] = ss_a > 0.0 ? std::sqrt(ss_d / ss_a) : (ss_d > 0.0 ? INFINITY : 0.0);
        m["max_abs"] = max_d;
        m["max_rel"] = max_a > 0.0 ? max_d / max_a : (max_d > 0.0 ? INFINITY : 0.0);
        m["points"] = used;
        m["skipped_nan"] = skipped;
        for (const auto& [metric, bound] : cfg.tolerances) {
            const bool ok = m[metric].get<double>() <= bound;
            m["pass_" + metric] = ok;
            pass = pass && ok;
        }
        report["channels"][na + ":" + nb] = m;
    }
    report["tolerances"] = cfg.tolerances;
    report["pass"] = pass;
    if (cfg.out == "-") std::cout << report.dump(2) << "\n";
    else write_text_atomic(output_stem(cfg.out) + ".json", report.dump(2) + "\n");
    return pass ? 0 : 3;
}

} // namespace scdens::cli
