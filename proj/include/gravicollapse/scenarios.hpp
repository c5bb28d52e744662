#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "gravicollapse/ball.hpp"
#include "gravicollapse/kernel.hpp"
#include "gravicollapse/units.hpp"

namespace gravicollapse {

inline constexpr const char* kVersion = "0.1.0";

// Flat configuration document shared by all subcommands. Parsing is strict:
// unknown keys are errors, so physics parameters can never be silently
// ignored.
struct ScenarioConfig {
    std::string scenario = "cat-collapse";
    std::string mode = "ball"; // harmonic | ball
    double gravity = 50.0;     // internal G (ball mode; hbar = M = R = 1)
    double hbar = 1.0;
    double mass = 1.0;
    double radius = 1.0;
    // Physical-unit inputs (CGS) for tg sweeps and units reporting.
    double mass_g = 0.0;
    double radius_cm = 0.0;
    double density_g_cm3 = 0.0;
    double softening = 0.0;
    std::string kernel = "auto"; // auto | ball | point | harmonic | zero
    int grid_n = 256;
    double grid_length = 16.0;
    int padding = 2;
    double dt = 2e-5;
    long steps = 5000;
    int record_stride = 50;
    double separation = 5.0;
    double packet_width = 0.25;
    double packet_center = 0.0;
    double packet_momentum = 0.0;
    int ensemble = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    double collapse_threshold = 0.99;
    double collapse_band_low = 0.2;
    double collapse_band_high = 5.0;
    double tolerance = 1e-10;
    long max_iterations = 200000;
    std::string noise = "auto"; // auto | field | scalar | off
    bool kinetic = true;
    std::string external_type = "none"; // none | harmonic | uniform
    double external_coefficient = 0.0;
    std::string sweep_variable = "separation"; // separation | radius
    double sweep_min = 0.1;
    double sweep_max = 100.0;
    int sweep_points = 50;
    double initial_width_scale = 1.3; // relax runs start at scale * stationary width
    int max_series_files = 8;         // per-trajectory CSVs written for k < this
    std::string out_dir = ".";

    bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
// Canonical echo: every key, fixed order. parse(emit(c)) == c.
std::string emit_config(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);

// Internal-unit ball, kernel, and characteristic frequency resolved from a
// config. omega is the harmonic-trap frequency of the kernel (1 in harmonic
// mode).
struct RunContext {
    BallSpec ball;  // hbar = M = 1 internal units
    Kernel kernel;
    double omega = 0.0;
    std::optional<UnitSystem> units; // set when physical inputs were given
};
RunContext resolve_context(const ScenarioConfig& cfg);

struct ScenarioReport {
    std::string scenario;
    nlohmann::ordered_json metrics;
    nlohmann::ordered_json provenance; // config echo, hash, seed, version
    std::vector<std::string> files;    // paths written, relative to out_dir
};

ScenarioReport run_cat_collapse(const ScenarioConfig& cfg);
ScenarioReport run_pointer_relaxation(const ScenarioConfig& cfg);
ScenarioReport run_tg_sweep(const ScenarioConfig& cfg);
ScenarioReport run_kernel_dump(const ScenarioConfig& cfg);
ScenarioReport run_units_report(const ScenarioConfig& cfg);
ScenarioReport run_sne_evolve(const ScenarioConfig& cfg);
ScenarioReport run_sne_ground(const ScenarioConfig& cfg);
ScenarioReport run_frsne_relax(const ScenarioConfig& cfg);
ScenarioReport run_vnne(const ScenarioConfig& cfg);
ScenarioReport run_unravel(const ScenarioConfig& cfg);

// Dispatch on cfg.scenario.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

// Writes report.json (metrics + provenance) into dir.
void emit_report(const ScenarioReport& report, const std::string& dir);

} // namespace gravicollapse
