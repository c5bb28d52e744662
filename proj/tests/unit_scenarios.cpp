#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gravicollapse/scenarios.hpp"

using namespace gravicollapse;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
} // namespace

TEST_CASE("minimal config fills defaults and echoes them") {
    const ScenarioConfig c = parse_config(R"({"scenario": "tg-sweep"})");
    CHECK(c.scenario == "tg-sweep");
    CHECK(c.mode == "ball");
    CHECK(c.grid_n == 256);
    const ScenarioConfig again = parse_config(emit_config(c));
    CHECK(again == c);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config(R"({"scenario": "vnne", "gravityy": 2.0})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("gravityy") != std::string::npos);
    }
}

TEST_CASE("type errors name the key") {
    try {
        parse_config(R"({"scenario": "vnne", "dt": "fast"})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("dt") != std::string::npos);
    }
}

TEST_CASE("invalid values are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"scenario": "warp"})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "vnne", "mode": "si"})"), ParseError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "vnne", "dt": -1.0})"), ParseError);
    CHECK_THROWS_AS(parse_config("not json"), ParseError);
    CHECK_THROWS_AS(parse_config("[1,2]"), ParseError);
}

TEST_CASE("config hash tracks content") {
    ScenarioConfig a;
    ScenarioConfig b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.dt *= 2.0;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("context resolution") {
    SUBCASE("ball mode carries G") {
        ScenarioConfig c;
        c.mode = "ball";
        c.gravity = 50.0;
        const RunContext ctx = resolve_context(c);
        CHECK(ctx.kernel.type() == Kernel::Type::ball);
        CHECK(ctx.omega == doctest::Approx(std::sqrt(50.0)));
    }
    SUBCASE("harmonic mode pins omega to one") {
        ScenarioConfig c;
        c.mode = "harmonic";
        const RunContext ctx = resolve_context(c);
        CHECK(ctx.kernel.type() == Kernel::Type::harmonic);
        CHECK(ctx.omega == doctest::Approx(1.0));
    }
    SUBCASE("physical inputs go through the unit system") {
        ScenarioConfig c;
        c.mode = "ball";
        c.density_g_cm3 = 1.0;
        c.radius_cm = 1e-4;
        const RunContext ctx = resolve_context(c);
        CHECK(ctx.ball.mass == doctest::Approx(1.0));
        CHECK(ctx.ball.radius == doctest::Approx(1.0));
        CHECK(ctx.units.has_value());
    }
}

TEST_CASE("radius sweep flags the point limit and brackets delocalization") {
    TempDir dir("gvc_tg_sweep");
    ScenarioConfig c;
    c.scenario = "tg-sweep";
    c.sweep_variable = "radius";
    c.density_g_cm3 = 1.0;
    c.sweep_min = 1e-6;
    c.sweep_max = 1e-3;
    c.sweep_points = 31;
    c.out_dir = dir.path.string();
    const ScenarioReport rep = run_tg_sweep(c);
    CHECK(fs::exists(dir.path / "tg_sweep.csv"));
    CHECK(fs::exists(dir.path / "report.json"));
    const double lo = rep.metrics["delocalization_crossing_low_cm"].get<double>();
    const double hi = rep.metrics["delocalization_crossing_high_cm"].get<double>();
    CHECK(lo >= 1e-5);
    CHECK(hi <= 1e-4);
}

TEST_CASE("kernel dump produces the documented columns") {
    TempDir dir("gvc_kernel_dump");
    ScenarioConfig c;
    c.scenario = "kernel-dump";
    c.mode = "ball";
    c.gravity = 1.0;
    c.sweep_points = 41;
    c.sweep_max = 4.0;
    c.out_dir = dir.path.string();
    run_kernel_dump(c);
    std::ifstream in(dir.path / "kernel.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "d,U,U_asymptotic_far,U_asymptotic_near");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 41);
}

TEST_CASE("units report carries the characteristic scales") {
    TempDir dir("gvc_units");
    ScenarioConfig c;
    c.scenario = "units";
    c.density_g_cm3 = 1.0;
    c.radius_cm = 1e-4;
    c.out_dir = dir.path.string();
    const ScenarioReport rep = run_units_report(c);
    CHECK(rep.metrics["delta_x_g_cm"].get<double>() ==
          doctest::Approx(6.9e-7).epsilon(0.01));
    CHECK(rep.metrics["delta_x_over_r"].get<double>() < 1.0);
}

TEST_CASE("report files embed the exact config echo") {
    TempDir dir("gvc_echo");
    ScenarioConfig c;
    c.scenario = "kernel-dump";
    c.out_dir = dir.path.string();
    run_kernel_dump(c);
    std::ifstream in(dir.path / "report.json");
    nlohmann::json j;
    in >> j;
    const ScenarioConfig back = parse_config(j["provenance"]["config"].dump());
    CHECK(back == c);
}
