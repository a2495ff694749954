#pragma once

#include "scdens/potentials.hpp"
#include "scdens/profile.hpp"
#include "scdens/smooth_tf.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scdens::cli {

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

struct RunConfig {
    std::string system = "box";
    PotentialModel model = box1d(1.0);

    std::optional<int> particles;
    std::optional<int> shells;
    std::optional<double> lambda;  // ramp only
    std::optional<GridSpec> grid;
    std::optional<std::string> cut;
    std::optional<int> k_max;
    int images = 0;  // 0: derived from image_ratio
    double image_ratio = 1e-4;
    double temperature = 0.0;
    std::optional<Window> window;
    double eta = 0.9;  // interior window r <= eta r_lambda when none is given
    std::string out = "scdens_out";
    std::string preset;

    double caustic_c = 8.0;
    double surface_switch = 0.9;  // fraction of the turning point where the Airy form takes over
    int detrend_degree = -1;      // < 0: no polynomial detrending

    std::vector<std::pair<std::string, std::string>> channels;  // compare: column in A : column in B
    std::map<std::string, double> tolerances;                   // compare: metric -> bound

    nlohmann::json echo() const;
};

// Applies one key of a [section]; `where` is used in error messages.
void set_key(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value,
             const std::string& where);

// Flat key=value text with [system], [run], [scl] and [compare] sections.
void load_config_file(RunConfig& cfg, const std::string& path);

// "iho" or "iho:dim=4,omega=1"
void apply_system(RunConfig& cfg, const std::string& text);

GridSpec parse_grid(const std::string& text);
Window parse_window(const std::string& text);

// Range and consistency checks run before any computation.
void validate_config(const RunConfig& cfg);

// Sets system, particle number, grid and truncations of a figure recipe.
void apply_preset(RunConfig& cfg, const std::string& id);
const std::vector<std::string>& preset_ids();

} // namespace scdens::cli
