#include "commands.hpp"
#include "config.hpp"

#include "scdens/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Flags {
    std::optional<std::string> system, grid, cut, window, out, config, preset;
    std::optional<int> n, shells, kmax, images;
    std::optional<double> temp;
};

void add_flags(CLI::App* app, Flags& f)
{
    app->add_option("--system", f.system, "system, optionally with parameters: iho:dim=3,omega=1");
    app->add_option("--n", f.n, "particle number (spin included)");
    app->add_option("--shells", f.shells, "filled main shells (oscillator)");
    app->add_option("--grid", f.grid, "min:max:count");
    app->add_option("--cut", f.cut, "line through a 2D system: y=..., x=... or ray=<slope>");
    app->add_option("--kmax", f.kmax, "repetitions in radial orbit sums");
    app->add_option("--images", f.images, "rectangle image range K (0: from the amplitude cut)");
    app->add_option("--temp", f.temp, "temperature");
    app->add_option("--window", f.window, "lo:hi interior window");
    app->add_option("--out", f.out, "output stem (.csv and .json are appended)");
    app->add_option("--config", f.config, "key=value file with [system], [run], [scl], [compare]");
    app->add_option("--preset", f.preset, "figure recipe used as a starting point");
}

// Preset, then config file, then flags.
scdens::cli::RunConfig build_config(const Flags& f)
{
    using namespace scdens::cli;
    RunConfig cfg;
    if (f.preset) apply_preset(cfg, *f.preset);
    if (f.config) load_config_file(cfg, *f.config);
    if (f.system) apply_system(cfg, *f.system);
    if (f.n) cfg.particles = *f.n;
    if (f.shells) cfg.shells = *f.shells;
    if (f.grid) cfg.grid = parse_grid(*f.grid);
    if (f.cut) cfg.cut = *f.cut;
    if (f.kmax) cfg.k_max = *f.kmax;
    if (f.images) cfg.images = *f.images;
    if (f.temp) cfg.temperature = *f.temp;
    if (f.window) cfg.window = parse_window(*f.window);
    if (f.out) cfg.out = *f.out;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    if (const char* threads = std::getenv("SCDENS_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
    }
    CLI::App app{"Exact and semiclassical spatial densities of non-interacting fermions"};
    app.require_subcommand(1);
    Flags f;
    std::string figure_id, file_a, file_b;

    auto* levels = app.add_subcommand("levels", "spectrum and level staircase");
    auto* density = app.add_subcommand("density", "quantum densities and their oscillating parts");
    auto* scl = app.add_subcommand("scl", "semiclassical oscillating densities");
    auto* thermal = app.add_subcommand("thermal", "finite-temperature densities");
    auto* figure = app.add_subcommand("figure", "data for one of the reference figures");
    auto* compare = app.add_subcommand("compare", "deviation metrics between two CSV files");
    for (auto* sub : {levels, density, scl, thermal, figure, compare}) add_flags(sub, f);
    figure->add_option("id", figure_id, "fig1 fig2 fig3 fig4 fig6 fig8 fig9 fig10 fig12 fig13")->required();
    compare->add_option("reference", file_a, "reference CSV")->required();
    compare->add_option("candidate", file_b, "CSV compared against the reference")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using namespace scdens::cli;
    try {
        const RunConfig cfg = build_config(f);
        if (*levels) return cmd_levels(cfg);
        if (*density) return cmd_density(cfg);
        if (*scl) return cmd_scl(cfg);
        if (*thermal) return cmd_thermal(cfg);
        if (*figure) return cmd_figure(cfg, figure_id);
        if (*compare) return cmd_compare(cfg, file_a, file_b);
    } catch (const scdens::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
