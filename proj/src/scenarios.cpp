#include "gravicollapse/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gravicollapse/decoherence.hpp"
#include "gravicollapse/frsne.hpp"
#include "gravicollapse/report.hpp"
#include "gravicollapse/sne.hpp"
#include "gravicollapse/stochastic.hpp"
#include "gravicollapse/vnne.hpp"

namespace gravicollapse {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const char* kKnownKeys[] = {
    "scenario", "mode", "gravity", "hbar", "mass", "radius", "mass_g", "radius_cm",
    "density_g_cm3", "softening", "kernel", "grid_n", "grid_length", "padding", "dt",
    "steps", "record_stride", "separation", "packet_width", "packet_center",
    "packet_momentum", "ensemble", "seed", "threads", "collapse_threshold",
    "collapse_band_low", "collapse_band_high", "tolerance", "max_iterations", "noise",
    "kinetic", "external_type", "external_coefficient", "sweep_variable", "sweep_min",
    "sweep_max", "sweep_points", "initial_width_scale", "max_series_files", "out_dir"};

template <class T>
void read_key(const ordered_json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("config key '") + key + "' has the wrong type");
    }
}

const char* kScenarios[] = {"cat-collapse", "pointer-relax", "tg-sweep", "kernel-dump",
                            "unravel-ensemble", "sne-evolve", "sne-ground",
                            "frsne-relax", "vnne", "units"};

void validate(const ScenarioConfig& c) {
    if (std::find_if(std::begin(kScenarios), std::end(kScenarios),
                     [&](const char* s) { return c.scenario == s; }) ==
        std::end(kScenarios))
        throw ParseError("unknown scenario tag: " + c.scenario);
    if (c.mode != "harmonic" && c.mode != "ball")
        throw ParseError("mode must be 'harmonic' or 'ball', got: " + c.mode);
    if (c.kernel != "auto" && c.kernel != "ball" && c.kernel != "point" &&
        c.kernel != "harmonic" && c.kernel != "zero")
        throw ParseError("unknown kernel: " + c.kernel);
    if (c.noise != "auto" && c.noise != "field" && c.noise != "scalar" && c.noise != "off")
        throw ParseError("unknown noise setting: " + c.noise);
    if (c.external_type != "none" && c.external_type != "harmonic" &&
        c.external_type != "uniform")
        throw ParseError("unknown external_type: " + c.external_type);
    if (c.sweep_variable != "separation" && c.sweep_variable != "radius")
        throw ParseError("sweep_variable must be 'separation' or 'radius'");
    if (!(c.dt > 0.0)) throw ParseError("dt must be > 0");
    if (c.steps < 0) throw ParseError("steps must be >= 0");
    if (c.ensemble < 1) throw ParseError("ensemble must be >= 1");
    if (c.record_stride < 1) throw ParseError("record_stride must be >= 1");
    if (!(c.collapse_threshold > 0.5 && c.collapse_threshold <= 1.0))
        throw ParseError("collapse_threshold must lie in (0.5, 1]");
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                         [&](const char* k) { return item.key() == k; }) ==
            std::end(kKnownKeys))
            throw ParseError("unknown config key: '" + item.key() + "'");
    }
    ScenarioConfig c;
    read_key(j, "scenario", c.scenario);
    read_key(j, "mode", c.mode);
    read_key(j, "gravity", c.gravity);
    read_key(j, "hbar", c.hbar);
    read_key(j, "mass", c.mass);
    read_key(j, "radius", c.radius);
    read_key(j, "mass_g", c.mass_g);
    read_key(j, "radius_cm", c.radius_cm);
    read_key(j, "density_g_cm3", c.density_g_cm3);
    read_key(j, "softening", c.softening);
    read_key(j, "kernel", c.kernel);
    read_key(j, "grid_n", c.grid_n);
    read_key(j, "grid_length", c.grid_length);
    read_key(j, "padding", c.padding);
    read_key(j, "dt", c.dt);
    read_key(j, "steps", c.steps);
    read_key(j, "record_stride", c.record_stride);
    read_key(j, "separation", c.separation);
    read_key(j, "packet_width", c.packet_width);
    read_key(j, "packet_center", c.packet_center);
    read_key(j, "packet_momentum", c.packet_momentum);
    read_key(j, "ensemble", c.ensemble);
    read_key(j, "seed", c.seed);
    read_key(j, "threads", c.threads);
    read_key(j, "collapse_threshold", c.collapse_threshold);
    read_key(j, "collapse_band_low", c.collapse_band_low);
    read_key(j, "collapse_band_high", c.collapse_band_high);
    read_key(j, "tolerance", c.tolerance);
    read_key(j, "max_iterations", c.max_iterations);
    read_key(j, "noise", c.noise);
    read_key(j, "kinetic", c.kinetic);
    read_key(j, "external_type", c.external_type);
    read_key(j, "external_coefficient", c.external_coefficient);
    read_key(j, "sweep_variable", c.sweep_variable);
    read_key(j, "sweep_min", c.sweep_min);
    read_key(j, "sweep_max", c.sweep_max);
    read_key(j, "sweep_points", c.sweep_points);
    read_key(j, "initial_width_scale", c.initial_width_scale);
    read_key(j, "max_series_files", c.max_series_files);
    read_key(j, "out_dir", c.out_dir);
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const ScenarioConfig& c) {
    ordered_json j;
    j["scenario"] = c.scenario;
    j["mode"] = c.mode;
    j["gravity"] = c.gravity;
    j["hbar"] = c.hbar;
    j["mass"] = c.mass;
    j["radius"] = c.radius;
    j["mass_g"] = c.mass_g;
    j["radius_cm"] = c.radius_cm;
    j["density_g_cm3"] = c.density_g_cm3;
    j["softening"] = c.softening;
    j["kernel"] = c.kernel;
    j["grid_n"] = c.grid_n;
    j["grid_length"] = c.grid_length;
    j["padding"] = c.padding;
    j["dt"] = c.dt;
    j["steps"] = c.steps;
    j["record_stride"] = c.record_stride;
    j["separation"] = c.separation;
    j["packet_width"] = c.packet_width;
    j["packet_center"] = c.packet_center;
    j["packet_momentum"] = c.packet_momentum;
    j["ensemble"] = c.ensemble;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["collapse_threshold"] = c.collapse_threshold;
    j["collapse_band_low"] = c.collapse_band_low;
    j["collapse_band_high"] = c.collapse_band_high;
    j["tolerance"] = c.tolerance;
    j["max_iterations"] = c.max_iterations;
    j["noise"] = c.noise;
    j["kinetic"] = c.kinetic;
    j["external_type"] = c.external_type;
    j["external_coefficient"] = c.external_coefficient;
    j["sweep_variable"] = c.sweep_variable;
    j["sweep_min"] = c.sweep_min;
    j["sweep_max"] = c.sweep_max;
    j["sweep_points"] = c.sweep_points;
    j["initial_width_scale"] = c.initial_width_scale;
    j["max_series_files"] = c.max_series_files;
    j["out_dir"] = c.out_dir;
    return j.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    return fnv1a_hash(emit_config(cfg));
}

RunContext resolve_context(const ScenarioConfig& cfg) {
    RunContext ctx;
    const bool physical =
        cfg.mass_g > 0.0 || (cfg.density_g_cm3 > 0.0 && cfg.radius_cm > 0.0);
    if (physical) {
        BallSpec phys =
            cfg.mass_g > 0.0
                ? BallSpec(cfg.mass_g, cfg.radius_cm, PhysicalConstants::codata())
                : BallSpec::from_density(cfg.density_g_cm3, cfg.radius_cm);
        const ScalingMode mode =
            cfg.mode == "harmonic" ? ScalingMode::harmonic : ScalingMode::ball;
        ctx.units = make_unit_system(phys, mode);
        ctx.ball = ctx.units->internal_ball(phys);
    } else if (cfg.mode == "ball") {
        ctx.ball = BallSpec(cfg.mass, cfg.radius, {cfg.gravity, cfg.hbar});
    } else {
        // harmonic mode: hbar = M = omega_G = 1 by construction.
        ctx.ball = BallSpec(cfg.mass, 1.0, {1.0, cfg.hbar});
    }

    std::string kernel = cfg.kernel;
    if (kernel == "auto") kernel = (cfg.mode == "harmonic") ? "harmonic" : "ball";
    if (kernel == "ball") {
        ctx.kernel = Kernel::ball_kernel(ctx.ball);
    } else if (kernel == "point") {
        const double eps = cfg.softening > 0.0 ? cfg.softening : ctx.ball.radius;
        ctx.kernel = Kernel::point_kernel(ctx.ball, eps);
    } else if (kernel == "harmonic") {
        const double omega =
            cfg.mode == "harmonic" ? 1.0 : gravitational_frequency(ctx.ball);
        ctx.kernel = Kernel::harmonic_kernel(ctx.ball.mass, omega);
    } else {
        ctx.kernel = Kernel::zero_kernel();
    }
    ctx.omega = ctx.kernel.omega();
    return ctx;
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

ordered_json provenance_block(const ScenarioConfig& cfg) {
    ordered_json p;
    p["version"] = kVersion;
    p["config"] = ordered_json::parse(emit_config(cfg));
    std::ostringstream hex;
    hex << std::hex << config_hash(cfg);
    p["config_hash"] = hex.str();
    p["seed"] = cfg.seed;
    return p;
}

void ensure_out_dir(const ScenarioConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.out_dir);
}

EvolutionConfig evolution_config(const ScenarioConfig& cfg, const GridSpec& grid,
                                 const RunContext& ctx) {
    EvolutionConfig e;
    e.dt = cfg.dt;
    e.steps = cfg.steps;
    e.record_stride = cfg.record_stride;
    e.hbar = cfg.hbar;
    e.mass = ctx.ball.mass;
    e.kinetic = cfg.kinetic;
    if (cfg.external_type == "harmonic")
        e.external = harmonic_external(grid, ctx.ball.mass, cfg.external_coefficient);
    else if (cfg.external_type == "uniform")
        e.external = uniform_external(grid, cfg.external_coefficient);
    return e;
}

StochasticConfig stochastic_config(const ScenarioConfig& cfg, const RunContext& ctx) {
    StochasticConfig s;
    s.dt = cfg.dt;
    s.steps = cfg.steps;
    s.record_stride = cfg.record_stride;
    s.kinetic = cfg.kinetic;
    s.hbar = cfg.hbar;
    s.mass = ctx.ball.mass;
    s.collapse_threshold = cfg.collapse_threshold;
    s.noise_on = cfg.noise != "off";
    return s;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - lo;
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

// t_G evaluated with the same kernel the run uses.
double kernel_t_g(const Kernel& kernel, double d, double hbar) {
    const double gap = kernel(d) - kernel.u0();
    return gap > 0.0 ? hbar / gap : std::numeric_limits<double>::infinity();
}

ordered_json ensemble_summary(const std::vector<TrajectoryRecord>& records,
                              double t_g) {
    ordered_json s;
    s["n_traj"] = records.size();
    std::vector<double> times;
    int left = 0, right = 0, uncollapsed = 0;
    double mean_drift = 0.0, max_drift = 0.0;
    for (const auto& r : records) {
        if (r.collapse_time)
            times.push_back(*r.collapse_time);
        else
            ++uncollapsed;
        (r.branch < 0 ? left : right) += 1;
        mean_drift += r.mean_preproj_drift;
        max_drift = std::max(max_drift, r.max_preproj_drift);
    }
    mean_drift /= records.empty() ? 1.0 : records.size();
    ordered_json q;
    q["q10"] = quantile(times, 0.10);
    q["q25"] = quantile(times, 0.25);
    q["median"] = quantile(times, 0.50);
    q["q75"] = quantile(times, 0.75);
    q["q90"] = quantile(times, 0.90);
    s["collapse_time_quantiles"] = q;
    s["uncollapsed"] = uncollapsed;
    ordered_json b;
    b["left"] = left;
    b["right"] = right;
    s["branch_counts"] = b;
    s["t_g"] = t_g;
    s["median_over_t_g"] = times.empty() ? std::nan("") : quantile(times, 0.5) / t_g;
    s["mean_preprojection_drift"] = mean_drift;
    s["max_preprojection_drift"] = max_drift;
    return s;
}

// Ensemble-mean var_x over the recorded series (all records share stride).
void write_mean_var_series(const std::string& path,
                           const std::vector<TrajectoryRecord>& records) {
    if (records.empty()) return;
    std::size_t rows = records.front().series.size();
    for (const auto& r : records) rows = std::min(rows, r.series.size());
    CsvWriter csv(path, {"t", "mean_var_x", "var_of_mean_x", "mean_mean_x"});
    for (std::size_t i = 0; i < rows; ++i) {
        double mv = 0.0, mx = 0.0, mx2 = 0.0;
        for (const auto& r : records) {
            mv += r.series[i].var_x;
            mx += r.series[i].mean_x;
            mx2 += r.series[i].mean_x * r.series[i].mean_x;
        }
        const double n = static_cast<double>(records.size());
        mv /= n;
        mx /= n;
        csv.row({records.front().series[i].t, mv, mx2 / n - mx * mx, mx});
    }
}

} // namespace

ScenarioReport run_cat_collapse(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    if (cfg.separation < 10.0 * cfg.packet_width)
        throw UnresolvedCat("cat separation must be >= 10 packet widths");
    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    if (!(cfg.packet_width > 2.0 * grid.spacing()))
        throw UnresolvedCat("grid does not resolve the cat packets");

    WaveFunction cat = cat_state(grid, cfg.separation, cfg.packet_width);
    StochasticConfig scfg = stochastic_config(cfg, ctx);
    EnsembleConfig ens;
    ens.n_trajectories = cfg.ensemble;
    ens.master_seed = cfg.seed;
    ens.threads = cfg.threads;
    ens.keep_projectors = false;

    const bool scalar = (cfg.noise == "scalar") ||
                        (cfg.noise == "auto" && cfg.mode == "harmonic");
    WaveEnsembleResult result;
    double t_g;
    if (scalar) {
        result = run_quadratic_ensemble(cat, ctx.omega, scfg, ens);
        t_g = cfg.hbar / (0.5 * ctx.ball.mass * ctx.omega * ctx.omega *
                          cfg.separation * cfg.separation);
    } else {
        KernelTable table = build_grid_kernel(ctx.kernel, grid);
        NoiseModel noise = NoiseModel::field(table, cfg.hbar);
        result = run_wave_ensemble(cat, table, noise, scfg, ens);
        t_g = kernel_t_g(ctx.kernel, cfg.separation, cfg.hbar);
    }

    {
        CsvWriter csv(join_path(cfg.out_dir, "collapse_times.csv"),
                      {"trajectory", "collapse_time", "branch", "final_var_x"});
        for (const auto& r : result.records)
            csv.row({static_cast<double>(r.trajectory_index),
                     r.collapse_time.value_or(std::nan("")),
                     static_cast<double>(r.branch), r.series.back().var_x});
        rep.files.push_back("collapse_times.csv");
    }
    write_mean_var_series(join_path(cfg.out_dir, "mean_var_series.csv"), result.records);
    rep.files.push_back("mean_var_series.csv");
    for (int k = 0; k < std::min<int>(cfg.max_series_files, cfg.ensemble); ++k) {
        const std::string name = "trajectory_" + std::to_string(k) + ".csv";
        write_stochastic_csv(join_path(cfg.out_dir, name), result.records[k]);
        rep.files.push_back(name);
    }

    ordered_json summary = ensemble_summary(result.records, t_g);
    double final_var = 0.0;
    for (const auto& r : result.records) final_var += r.series.back().var_x;
    final_var /= result.records.size();
    summary["mean_final_var_x"] = final_var;
    const double median_ratio = summary["median_over_t_g"].get<double>();
    summary["within_band"] = (median_ratio >= cfg.collapse_band_low &&
                              median_ratio <= cfg.collapse_band_high);
    rep.metrics = summary;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_pointer_relaxation(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    KernelTable table = build_grid_kernel(ctx.kernel, grid);
    EvolutionConfig ecfg = evolution_config(cfg, grid, ctx);

    const double var_target = ctx.omega > 0.0
        ? std::sqrt(2.0) * cfg.hbar / (2.0 * ctx.ball.mass * ctx.omega)
        : cfg.packet_width * cfg.packet_width;
    const double width0 = cfg.initial_width_scale * std::sqrt(var_target);

    WaveFunction psi = gaussian_packet(grid, cfg.packet_center, width0);
    Trajectory frsne_traj = evolve_frsne(psi, table, ecfg);
    write_trajectory_csv(join_path(cfg.out_dir, "frsne_series.csv"), frsne_traj);
    rep.files.push_back("frsne_series.csv");

    // Reversible comparison run from the same start: breathes, does not relax.
    WaveFunction psi_sne = gaussian_packet(grid, cfg.packet_center, width0);
    Trajectory sne_traj = evolve_sne(psi_sne, table, ecfg);
    write_trajectory_csv(join_path(cfg.out_dir, "sne_series.csv"), sne_traj);
    rep.files.push_back("sne_series.csv");

    double converge_time = std::nan("");
    for (const auto& row : frsne_traj.series) {
        if (std::abs(row.var_x - var_target) < 0.05 * var_target) {
            converge_time = row.t;
            break;
        }
    }
    double sne_min = sne_traj.series.front().var_x, sne_max = sne_min;
    for (const auto& row : sne_traj.series) {
        sne_min = std::min(sne_min, row.var_x);
        sne_max = std::max(sne_max, row.var_x);
    }
    ordered_json m;
    m["final_var_x"] = frsne_traj.series.back().var_x;
    m["stationary_var_target"] = var_target;
    m["final_over_target"] = frsne_traj.series.back().var_x / var_target;
    m["converge_time"] = converge_time;
    m["sne_var_min"] = sne_min;
    m["sne_var_max"] = sne_max;
    m["sne_breathing_amplitude"] = (sne_max - sne_min) / (sne_max + sne_min);
    m["max_counterterm_gap"] = frsne_traj.series.back().counterterm_gap;
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_tg_sweep(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);
    ordered_json m;

    if (cfg.sweep_variable == "separation") {
        RunContext ctx = resolve_context(cfg);
        const double t_unit = ctx.units ? ctx.units->time_unit : 1.0;
        CsvWriter csv(join_path(cfg.out_dir, "tg_sweep.csv"),
                      {"d", "t_g", "rate", "regime", "singular"});
        int singular_rows = 0;
        for (int i = 0; i < cfg.sweep_points; ++i) {
            const double f = cfg.sweep_points == 1
                                 ? 0.0
                                 : static_cast<double>(i) / (cfg.sweep_points - 1);
            const double d = cfg.sweep_min * std::pow(cfg.sweep_max / cfg.sweep_min, f);
            const DecoherenceReport r =
                decoherence_time(ctx.ball, d, cfg.softening, t_unit);
            csv.row({d, r.t_g, r.rate, static_cast<double>(static_cast<int>(r.regime)),
                     r.singular ? 1.0 : 0.0});
            singular_rows += r.singular;
        }
        m["rows"] = cfg.sweep_points;
        m["singular_rows"] = singular_rows;
    } else {
        // Common-density radius sweep in physical units.
        const double density = cfg.density_g_cm3 > 0.0 ? cfg.density_g_cm3 : 1.0;
        CsvWriter csv(join_path(cfg.out_dir, "tg_sweep.csv"),
                      {"radius_cm", "mass_g", "t_g_s", "rate", "regime",
                       "delta_x_over_r", "singular"});
        int singular_rows = 0;
        double crossing_low = std::nan(""), crossing_high = std::nan("");
        double prev_ratio = std::nan(""), prev_r = std::nan("");
        for (int i = 0; i < cfg.sweep_points; ++i) {
            const double f = cfg.sweep_points == 1
                                 ? 0.0
                                 : static_cast<double>(i) / (cfg.sweep_points - 1);
            const double r_cm =
                cfg.sweep_min * std::pow(cfg.sweep_max / cfg.sweep_min, f);
            if (r_cm == 0.0) {
                BallSpec point(1e-15, 0.0, PhysicalConstants::codata());
                const DecoherenceReport rr = decoherence_time(point, 1.0);
                csv.row({0.0, point.mass, rr.t_g, rr.rate,
                         static_cast<double>(static_cast<int>(rr.regime)),
                         std::nan(""), 1.0});
                ++singular_rows;
                continue;
            }
            BallSpec ball = BallSpec::from_density(density, r_cm);
            // Distant-superposition limit: t_g at d = 1000 R.
            const DecoherenceReport rr = decoherence_time(ball, 1000.0 * r_cm);
            const double ratio = soliton_length_scale(ball) / r_cm;
            csv.row({r_cm, ball.mass, rr.t_g, rr.rate,
                     static_cast<double>(static_cast<int>(rr.regime)), ratio,
                     rr.singular ? 1.0 : 0.0});
            if (!std::isnan(prev_ratio) && (prev_ratio - 1.0) * (ratio - 1.0) < 0.0) {
                crossing_low = prev_r;
                crossing_high = r_cm;
            }
            prev_ratio = ratio;
            prev_r = r_cm;
        }
        m["rows"] = cfg.sweep_points;
        m["singular_rows"] = singular_rows;
        m["delocalization_crossing_low_cm"] = crossing_low;
        m["delocalization_crossing_high_cm"] = crossing_high;
    }
    rep.files.push_back("tg_sweep.csv");
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_kernel_dump(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    const double gm2 = ctx.ball.constants.G * ctx.ball.mass * ctx.ball.mass;
    const double R = ctx.ball.radius;
    const double d_max = cfg.sweep_max > 0.0 ? cfg.sweep_max : 4.0 * R;
    CsvWriter csv(join_path(cfg.out_dir, "kernel.csv"),
                  {"d", "U", "U_asymptotic_far", "U_asymptotic_near"});
    for (int i = 0; i < cfg.sweep_points; ++i) {
        const double d = d_max * i / (cfg.sweep_points - 1);
        const double u = ctx.kernel(d);
        const double far = d > 0.0 ? -gm2 / d : std::nan("");
        const double near = ctx.kernel.u0() + 0.5 * ctx.ball.mass * ctx.omega *
                                                  ctx.omega * d * d;
        csv.row({d, u, far, near});
    }
    rep.files.push_back("kernel.csv");
    ordered_json m;
    m["u0"] = ctx.kernel.u0();
    m["omega_g"] = ctx.omega;
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_units_report(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    BallSpec phys = cfg.mass_g > 0.0
                        ? BallSpec(cfg.mass_g, cfg.radius_cm, PhysicalConstants::codata())
                        : BallSpec::from_density(
                              cfg.density_g_cm3 > 0.0 ? cfg.density_g_cm3 : 1.0,
                              cfg.radius_cm > 0.0 ? cfg.radius_cm : 1e-4);
    ordered_json m;
    m["mass_g"] = phys.mass;
    m["radius_cm"] = phys.radius;
    m["density_g_cm3"] = phys.density();
    m["omega_g_per_s"] = gravitational_frequency(phys);
    m["delta_x_g_cm"] = soliton_length_scale(phys);
    m["ground_state_sigma_cm"] = ground_state_sigma(phys);
    m["delta_x_over_r"] = soliton_length_scale(phys) / phys.radius;
    const DecoherenceReport far = decoherence_time(phys, 1000.0 * phys.radius);
    m["t_g_distant_s"] = far.t_g;
    m["regime"] = to_string(far.regime);
    for (const char* mode : {"harmonic", "ball"}) {
        UnitSystem u = make_unit_system(
            phys, mode == std::string("harmonic") ? ScalingMode::harmonic
                                                  : ScalingMode::ball);
        ordered_json uj;
        uj["length_cm"] = u.length_unit;
        uj["time_s"] = u.time_unit;
        uj["mass_g"] = u.mass_unit;
        uj["energy_erg"] = u.energy_unit;
        uj["internal_G"] = u.internal_G;
        m[std::string("units_") + mode] = uj;
    }
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_sne_evolve(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    KernelTable table = build_grid_kernel(ctx.kernel, grid);
    EvolutionConfig ecfg = evolution_config(cfg, grid, ctx);
    WaveFunction psi = gaussian_packet(grid, cfg.packet_center, cfg.packet_width,
                                       cfg.packet_momentum, cfg.hbar);
    Trajectory traj = evolve_sne(psi, table, ecfg);
    write_trajectory_csv(join_path(cfg.out_dir, "series.csv"), traj);
    psi.save_csv(join_path(cfg.out_dir, "final_state.csv"), cfg.steps * cfg.dt);
    psi.save_binary(join_path(cfg.out_dir, "final_state.bin"), cfg.steps * cfg.dt);
    rep.files = {"series.csv", "final_state.csv", "final_state.bin"};

    ordered_json m;
    m["final_norm2"] = traj.series.back().norm_squared;
    m["energy_drift"] =
        std::abs(traj.series.back().energy - traj.series.front().energy);
    m["final_var_x"] = traj.series.back().var_x;
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_sne_ground(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    KernelTable table = build_grid_kernel(ctx.kernel, grid);
    GroundStateConfig gcfg;
    gcfg.tol = cfg.tolerance;
    gcfg.max_iterations = cfg.max_iterations;
    gcfg.hbar = cfg.hbar;
    gcfg.mass = ctx.ball.mass;
    PointerState ps = ground_state_sne(table, grid, gcfg);
    ps.state.save_csv(join_path(cfg.out_dir, "ground_state.csv"));
    rep.files = {"ground_state.csv"};

    ordered_json m;
    m["width"] = ps.width;
    m["energy"] = ps.energy;
    m["iterations"] = ps.iterations;
    if (ctx.omega > 0.0) {
        const double sigma = std::sqrt(cfg.hbar / (2.0 * ctx.ball.mass * ctx.omega));
        m["width_over_harmonic_sigma"] = ps.width / sigma;
    }
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_frsne_relax(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    KernelTable table = build_grid_kernel(ctx.kernel, grid);
    EvolutionConfig ecfg = evolution_config(cfg, grid, ctx);
    const double var_target = ctx.omega > 0.0
        ? std::sqrt(2.0) * cfg.hbar / (2.0 * ctx.ball.mass * ctx.omega)
        : cfg.packet_width * cfg.packet_width;
    const double width0 = cfg.initial_width_scale * std::sqrt(var_target);
    WaveFunction psi = gaussian_packet(grid, cfg.packet_center, width0);
    Trajectory traj = evolve_frsne(psi, table, ecfg);
    write_trajectory_csv(join_path(cfg.out_dir, "series.csv"), traj);
    psi.save_csv(join_path(cfg.out_dir, "final_state.csv"), cfg.steps * cfg.dt);
    rep.files = {"series.csv", "final_state.csv"};

    ordered_json m;
    m["final_var_x"] = traj.series.back().var_x;
    m["stationary_var_target"] = var_target;
    m["final_norm2"] = traj.series.back().norm_squared;
    m["counterterm_gap"] = traj.series.back().counterterm_gap;
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_vnne(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    KernelTable table = build_grid_kernel(ctx.kernel, grid);
    WaveFunction cat = cat_state(grid, cfg.separation, cfg.packet_width);
    DensityMatrix rho = DensityMatrix::pure(cat);
    VnneConfig vcfg;
    vcfg.dt = cfg.dt;
    vcfg.steps = cfg.steps;
    vcfg.record_stride = cfg.record_stride;
    vcfg.kinetic = cfg.kinetic;
    vcfg.hbar = cfg.hbar;
    vcfg.mass = ctx.ball.mass;
    vcfg.monitor_positivity = true;
    DmTrajectory traj = evolve_vnne(rho, table, vcfg);
    write_dm_trajectory_csv(join_path(cfg.out_dir, "series.csv"), traj);
    rep.files = {"series.csv"};

    ordered_json m;
    m["trace_drift"] = std::abs(traj.series.back().trace - traj.series.front().trace);
    m["final_purity"] = traj.series.back().purity;
    m["positivity_warning"] = traj.positivity_warning;
    m["min_eigenvalue"] = traj.series.back().min_eigenvalue;
    m["t_g_separation"] = kernel_t_g(ctx.kernel, cfg.separation, cfg.hbar);
    rep.metrics = m;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_unravel(const ScenarioConfig& cfg) {
    ensure_out_dir(cfg);
    RunContext ctx = resolve_context(cfg);
    ScenarioReport rep;
    rep.scenario = cfg.scenario;
    rep.provenance = provenance_block(cfg);

    GridSpec grid(cfg.grid_n, cfg.grid_length, cfg.padding);
    WaveFunction cat = cat_state(grid, cfg.separation, cfg.packet_width);
    StochasticConfig scfg = stochastic_config(cfg, ctx);
    scfg.burnin_steps = cfg.steps / 5;
    EnsembleConfig ens;
    ens.n_trajectories = cfg.ensemble;
    ens.master_seed = cfg.seed;
    ens.threads = cfg.threads;
    ens.keep_projectors = false;

    const bool scalar = (cfg.noise == "scalar") ||
                        (cfg.noise == "auto" && cfg.mode == "harmonic");
    WaveEnsembleResult result;
    double t_g;
    if (scalar) {
        result = run_quadratic_ensemble(cat, ctx.omega, scfg, ens);
        t_g = cfg.hbar / (0.5 * ctx.ball.mass * ctx.omega * ctx.omega *
                          cfg.separation * cfg.separation);
    } else {
        KernelTable table = build_grid_kernel(ctx.kernel, grid);
        NoiseModel noise = NoiseModel::field(table, cfg.hbar);
        result = run_wave_ensemble(cat, table, noise, scfg, ens);
        t_g = kernel_t_g(ctx.kernel, cfg.separation, cfg.hbar);
    }

    ordered_json summary = ensemble_summary(result.records, t_g);
    double diff_num = 0.0, diff_den = 0.0;
    for (const auto& r : result.records) {
        diff_num += r.diffusion_sq_sum;
        diff_den += r.diffusion_time;
    }
    ordered_json dj;
    dj["coefficient"] = diff_den > 0.0 ? diff_num / diff_den : std::nan("");
    dj["time_accumulated"] = diff_den;
    summary["diffusion_fit"] = dj;

    write_mean_var_series(join_path(cfg.out_dir, "mean_var_series.csv"), result.records);
    rep.files.push_back("mean_var_series.csv");
    for (int k = 0; k < std::min<int>(cfg.max_series_files, cfg.ensemble); ++k) {
        const std::string name = "trajectory_" + std::to_string(k) + ".csv";
        write_stochastic_csv(join_path(cfg.out_dir, name), result.records[k]);
        rep.files.push_back(name);
    }
    {
        std::ofstream out(join_path(cfg.out_dir, "ensemble_summary.json"));
        if (!out) throw IoError("cannot write ensemble_summary.json");
        out << summary.dump(2) << "\n";
        rep.files.push_back("ensemble_summary.json");
    }
    rep.metrics = summary;
    emit_report(rep, cfg.out_dir);
    return rep;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    if (cfg.scenario == "cat-collapse") return run_cat_collapse(cfg);
    if (cfg.scenario == "pointer-relax") return run_pointer_relaxation(cfg);
    if (cfg.scenario == "tg-sweep") return run_tg_sweep(cfg);
    if (cfg.scenario == "kernel-dump") return run_kernel_dump(cfg);
    if (cfg.scenario == "unravel-ensemble") return run_unravel(cfg);
    if (cfg.scenario == "sne-evolve") return run_sne_evolve(cfg);
    if (cfg.scenario == "sne-ground") return run_sne_ground(cfg);
    if (cfg.scenario == "frsne-relax") return run_frsne_relax(cfg);
    if (cfg.scenario == "vnne") return run_vnne(cfg);
    if (cfg.scenario == "units") return run_units_report(cfg);
    throw ParseError("unknown scenario tag: " + cfg.scenario);
}

void emit_report(const ScenarioReport& report, const std::string& dir) {
    ordered_json j;
    j["scenario"] = report.scenario;
    j["metrics"] = report.metrics;
    j["provenance"] = report.provenance;
    j["files"] = report.files;
    const std::string path = (fs::path(dir) / "report.json").string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace gravicollapse
