#include "config.hpp"
#include "table.hpp"

#include "scdens/error.hpp"
#include "scdens/quantum.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace scdens::cli {
namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& v, const std::string& where)
{
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        config_error("InvalidValue", where + ": '" + v + "' is not a number");
    return x;
}

int to_int(const std::string& v, const std::string& where)
{
    int x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        config_error("InvalidValue", where + ": '" + v + "' is not an integer");
    return x;
}

PotentialModel default_model(SystemKind kind)
{
    switch (kind) {
    case SystemKind::Box1D: return box1d(1.0);
    case SystemKind::Quartic1D: return quartic1d();
    case SystemKind::Linear1D: return linear1d(1.0);
    case SystemKind::IHO: return iho(3);
    case SystemKind::RectBilliard: return rect_billiard(std::pow(2.0, 0.25), std::pow(3.0, 0.25));
    case SystemKind::SphereBilliard: return sphere_billiard(3, 1.0);
    case SystemKind::CircleBilliard: return circle_billiard(1.0);
    case SystemKind::CoupledQuartic2D: return coupled_quartic(0.6);
    }
    return box1d(1.0);
}

void set_system_key(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where)
{
    PotentialModel& m = cfg.model;
    if (key == "kind") {
        const auto kind = parse_system(value);
        if (!kind) config_error("UnknownSystem", where + ": unknown system '" + value + "'");
        cfg.system = value;
        m = default_model(*kind);
    } else if (key == "dim") {
        m.dim = to_int(value, where);
    } else if (key == "length" || key == "radius") {
        m.length = to_double(value, where);
    } else if (key == "slope") {
        m.slope = to_double(value, where);
    } else if (key == "omega") {
        m.omega = to_double(value, where);
    } else if (key == "qx") {
        m.qx = to_double(value, where);
    } else if (key == "qy") {
        m.qy = to_double(value, where);
    } else if (key == "kappa") {
        m.kappa = to_double(value, where);
    } else if (key == "mass") {
        m.mass = to_double(value, where);
    } else if (key == "hbar") {
        m.hbar = to_double(value, where);
    } else if (key == "spin") {
        m.spin = to_int(value, where);
    } else {
        config_error("UnknownKey", where + ": unknown key '" + key + "' in [system]");
    }
}

} // namespace

GridSpec parse_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3) config_error("InvalidGrid", "grid must be min:max:count, got '" + text + "'");
    GridSpec g{to_double(parts[0], "grid min"), to_double(parts[1], "grid max"), to_int(parts[2], "grid count")};
    if (g.count < 1) config_error("InvalidGrid", "grid count must be >= 1");
    if (g.hi < g.lo) config_error("InvalidGrid", "grid max must not be below min");
    return g;
}

Window parse_window(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 2) config_error("InvalidWindow", "window must be lo:hi, got '" + text + "'");
    Window w{to_double(parts[0], "window lo"), to_double(parts[1], "window hi")};
    if (w.hi < w.lo) config_error("InvalidWindow", "window hi must not be below lo");
    return w;
}

void apply_system(RunConfig& cfg, const std::string& text)
{
    const auto colon = text.find(':');
    set_system_key(cfg, "kind", trim(text.substr(0, colon)), "--system");
    if (colon == std::string::npos) return;
    for (const auto& kv : split(text.substr(colon + 1), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) config_error("InvalidValue", "--system: expected key=value, got '" + kv + "'");
        set_system_key(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)), "--system");
    }
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value,
             const std::string& where)
{
    if (section == "system") return set_system_key(cfg, key, value, where);
    if (section == "run") {
        if (key == "n") cfg.particles = to_int(value, where);
        else if (key == "shells") cfg.shells = to_int(value, where);
        else if (key == "lambda") cfg.lambda = to_double(value, where);
        else if (key == "grid") cfg.grid = parse_grid(value);
        else if (key == "cut") cfg.cut = value;
        else if (key == "kmax") cfg.k_max = to_int(value, where);
        else if (key == "images") cfg.images = to_int(value, where);
        else if (key == "temp") cfg.temperature = to_double(value, where);
        else if (key == "window") cfg.window = parse_window(value);
        else if (key == "eta") cfg.eta = to_double(value, where);
        else if (key == "out") cfg.out = value;
        else config_error("UnknownKey", where + ": unknown key '" + key + "' in [run]");
        return;
    }
    if (section == "scl") {
        if (key == "caustic_c") cfg.caustic_c = to_double(value, where);
        else if (key == "surface_switch") cfg.surface_switch = to_double(value, where);
        else if (key == "image_ratio") cfg.image_ratio = to_double(value, where);
        else if (key == "detrend") cfg.detrend_degree = to_int(value, where);
        else config_error("UnknownKey", where + ": unknown key '" + key + "' in [scl]");
        return;
    }
    if (section == "compare") {
        if (key == "channels") {
            cfg.channels.clear();
            for (const auto& pair : split(value, ',')) {
                const auto c = pair.find(':');
                if (c == std::string::npos) cfg.channels.emplace_back(pair, pair);
                else cfg.channels.emplace_back(trim(pair.substr(0, c)), trim(pair.substr(c + 1)));
            }
        } else if (key == "rms_abs" || key == "rms_rel" || key == "max_abs" || key == "max_rel") {
            cfg.tolerances[key] = to_double(value, where);
        } else {
            config_error("UnknownKey", where + ": unknown key '" + key + "' in [compare]");
        }
        return;
    }
    config_error("UnknownSection", where + ": unknown section [" + section + "]");
}

void load_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) config_error("ConfigNotFound", "cannot open config file '" + path + "'");
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto hash = line.find('#');
        const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') config_error("ConfigSyntax", where + ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) config_error("ConfigSyntax", where + ": expected key = value");
        if (section.empty()) config_error("ConfigSyntax", where + ": key outside of a section");
        // The cut value itself contains '=' (e.g. cut = y=0.3).
        set_key(cfg, section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), where);
    }
}

void validate_config(const RunConfig& cfg)
{
    validate(cfg.model);
    if (cfg.particles && *cfg.particles <= 0) config_error("InvalidParticleNumber", "n must be positive");
    if (cfg.shells && *cfg.shells <= 0) config_error("InvalidShells", "shells must be positive");
    if (cfg.k_max && *cfg.k_max < 0) config_error("InvalidTruncation", "kmax must be >= 0");
    if (cfg.images < 0) config_error("InvalidTruncation", "images must be >= 0");
    if (!(cfg.image_ratio > 0.0 && cfg.image_ratio < 1.0)) config_error("InvalidTruncation", "image_ratio must be in (0, 1)");
    if (cfg.temperature < 0.0) config_error("NegativeTemperature", "temp must be >= 0");
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) config_error("InvalidWindow", "eta must be in (0, 1]");
    if (cfg.caustic_c < 0.0) config_error("InvalidSwitch", "caustic_c must be >= 0");
    if (!(cfg.surface_switch > 0.0)) config_error("InvalidSwitch", "surface_switch must be positive");
    if (cfg.lambda && !(*cfg.lambda > 0.0)) config_error("InvalidValue", "lambda must be positive");
    if (cfg.shells && cfg.model.kind != SystemKind::IHO)
        config_error("NoShellStructure", "shells are defined for the oscillator only; use --n");
    const bool plane = cfg.model.dim == 2 && !is_radial(cfg.model);
    if (plane && !cfg.cut) config_error("MissingCut", "2D systems need --cut (y=..., x=... or ray=...)");
    if (cfg.cut) parse_cut(*cfg.cut);
    if (cfg.out.empty()) config_error("InvalidOutput", "--out must not be empty");
}

nlohmann::json RunConfig::echo() const
{
    nlohmann::json j;
    j["system"] = {{"kind", system_name(model.kind)},
                   {"dim", model.dim},
                   {"length", model.length},
                   {"slope", model.slope},
                   {"omega", model.omega},
                   {"qx", model.qx},
                   {"qy", model.qy},
                   {"kappa", model.kappa},
                   {"mass", model.mass},
                   {"hbar", model.hbar},
                   {"spin", model.spin}};
    nlohmann::json run;
    if (particles) run["n"] = *particles;
    if (shells) run["shells"] = *shells;
    if (lambda) run["lambda"] = *lambda;
    if (grid) run["grid"] = {grid->lo, grid->hi, grid->count};
    if (cut) run["cut"] = *cut;
    if (k_max) run["kmax"] = *k_max;
    run["images"] = images;
    run["temp"] = temperature;
    if (window) run["window"] = {window->lo, window->hi};
    run["eta"] = eta;
    if (!preset.empty()) run["preset"] = preset;
    j["run"] = run;
    j["scl"] = {{"caustic_c", caustic_c},
                {"surface_switch", surface_switch},
                {"image_ratio", image_ratio},
                {"detrend", detrend_degree}};
    return j;
}

const std::vector<std::string>& preset_ids()
{
    static const std::vector<std::string> ids{"fig1", "fig2", "fig3", "fig4", "fig6",
                                              "fig8", "fig9", "fig10", "fig12", "fig13"};
    return ids;
}

void apply_preset(RunConfig& cfg, const std::string& id)
{
    auto set_sys = [&](const std::string& text) { apply_system(cfg, text); };
    cfg.preset = id;
    if (id == "fig1" || id == "fig13") {
        set_sys("sphere:dim=3,radius=1");
        cfg.particles = 100068;
        cfg.grid = GridSpec{0.0, 1.0, 401};
        cfg.window = Window{0.1, 0.9};
    } else if (id == "fig2") {
        set_sys("coupled_quartic:kappa=0.6");
        cfg.particles = 632;
        cfg.cut = "ray=" + format_double(1.0 / std::sqrt(3.0));
        cfg.grid = GridSpec{0.0, 3.5, 351};
    } else if (id == "fig12") {
        set_sys("coupled_quartic:kappa=0.6");
        cfg.particles = 42;
        cfg.cut = "ray=" + format_double(1.0 / std::sqrt(3.0));
        cfg.grid = GridSpec{0.0, 2.4, 241};
    } else if (id == "fig3" || id == "fig8") {
        set_sys("quartic:spin=1");
        cfg.particles = 40;
        cfg.k_max = 50;
        cfg.grid = id == "fig3" ? GridSpec{0.0, 4.2, 421} : GridSpec{0.0, 5.5, 551};
    } else if (id == "fig4") {
        set_sys("iho:dim=4");
        cfg.shells = 51;  // highest filled shell index 50
        cfg.k_max = 15;
        cfg.grid = GridSpec{0.0, 10.5, 526};
    } else if (id == "fig6") {
        set_sys("rect");
        cfg.particles = 2000;
        cfg.cut = "x=" + format_double(std::pow(2.0, 0.25) / 2);
        cfg.grid = GridSpec{0.005, std::pow(3.0, 0.25) - 0.005, 400};
        cfg.window = Window{0.1 * std::pow(3.0, 0.25), 0.9 * std::pow(3.0, 0.25)};
    } else if (id == "fig9") {
        set_sys("iho:dim=3");
        cfg.shells = 40;
        cfg.grid = GridSpec{6.0, 11.0, 501};
    } else if (id == "fig10") {
        set_sys("iho:dim=3");
        cfg.shells = 20;
        cfg.k_max = 15;
        cfg.grid = GridSpec{0.0, 8.0, 401};
    } else {
        config_error("UnknownFigure", "unknown figure '" + id + "'");
    }
}

} // namespace scdens::cli
