#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gravicollapse/errors.hpp"
#include "gravicollapse/scenarios.hpp"

using namespace gravicollapse;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "JSON configuration file");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "master seed override")
        ->each([&](const std::string&) { opts.seed_set = true; });
}

int run(const std::string& scenario, const CommonOpts& opts) {
    ScenarioConfig cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    cfg.scenario = scenario;
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed_set) cfg.seed = opts.seed;
    ScenarioReport rep = run_scenario(cfg);
    std::cout << rep.metrics.dump(2) << "\n";
    std::cout << "report: " << cfg.out_dir << "/report.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semiclassical gravitational collapse simulator"};
    app.require_subcommand(1);

    struct SubDef {
        const char* name;
        const char* scenario;
        const char* help;
    };
    const SubDef subs[] = {
        {"kernel", "kernel-dump", "dump pair-potential samples as CSV"},
        {"tg", "tg-sweep", "decoherence-time sweep over separation or radius"},
        {"sne-evolve", "sne-evolve", "evolve the self-gravitating wave equation"},
        {"sne-ground", "sne-ground", "imaginary-time ground-state soliton"},
        {"frsne-relax", "frsne-relax", "frictional relaxation to the pointer state"},
        {"vnne", "vnne", "density-matrix decoherence propagator"},
        {"unravel", "unravel-ensemble", "stochastic trajectory ensembles"},
        {"cat", "cat-collapse", "cat-state collapse experiment"},
        {"pointer-relax", "pointer-relax", "pointer-state formation experiment"},
        {"units", "units", "unit-system and characteristic-scale report"},
    };

    std::vector<std::pair<std::string, CommonOpts>> registered;
    registered.reserve(std::size(subs));
    for (const auto& def : subs) {
        auto* sub = app.add_subcommand(def.name, def.help);
        registered.emplace_back(def.scenario, CommonOpts{});
        auto& opts = registered.back().second;
        add_common(sub, opts);
        const std::string scenario = def.scenario;
        CommonOpts* optr = &opts;
        sub->callback([scenario, optr] { run(scenario, *optr); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
