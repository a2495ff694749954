#pragma once

#include "config.hpp"
#include "table.hpp"

#include <string>

namespace scdens::cli {

// Each command writes <out>.csv and <out>.json and returns the exit code.
int cmd_levels(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_scl(const RunConfig& cfg);
int cmd_thermal(const RunConfig& cfg);
int cmd_figure(RunConfig cfg, const std::string& id);
int cmd_compare(const RunConfig& cfg, const std::string& file_a, const std::string& file_b);

// Building blocks shared with the figure recipes.
struct RunContext {
    Grid grid;
    int particles = 0;
    int shells = 0;  // oscillator main shells, else filled levels per spin state
    double lambda = 0.0;
    double lambda_smooth = 0.0;
};

RunContext prepare(const RunConfig& cfg, bool need_particles = true);
Table density_table(const RunConfig& cfg, const RunContext& ctx, nlohmann::json& meta);
Table scl_table(const RunConfig& cfg, const RunContext& ctx, nlohmann::json& meta);

} // namespace scdens::cli
