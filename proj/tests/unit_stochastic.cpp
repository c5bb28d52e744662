#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gravicollapse/frsne.hpp"
#include "gravicollapse/moments.hpp"
#include "gravicollapse/stochastic.hpp"

using namespace gravicollapse;

namespace {
const BallSpec unit_ball(1.0, 1.0, {1.0, 1.0});
}

TEST_CASE("noise stream is deterministic and counter-keyed") {
    TrajectoryRng a(42, 3), b(42, 3), c(42, 4);
    for (int i = 0; i < 100; ++i) {
        const double va = a.normal();
        CHECK(va == b.normal());
        CHECK(va != c.normal());
    }
    CHECK(a.draws() == 100);
}

TEST_CASE("field samples reproduce the kernel covariance") {
    const GridSpec grid(32, 12.0);
    KernelTable table(Kernel::ball_kernel(unit_ball), grid);
    NoiseModel model = NoiseModel::field(table, 1.0);
    CHECK(model.clipped_fraction() < 0.5); // only roundoff-level clipping

    const double dt = 0.01;
    const int n_samples = 20000;
    TrajectoryRng rng(7, 0);
    const int i = 10, j = 25;
    double sum_ii = 0.0, sum_ij = 0.0, sum_jj = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const NoiseFieldSample w = model.sample(dt, rng);
        sum_ii += w.w[i] * w.w[i];
        sum_ij += w.w[i] * w.w[j];
        sum_jj += w.w[j] * w.w[j];
    }
    const double c_ii = sum_ii / n_samples * dt;
    const double c_ij = sum_ij / n_samples * dt;
    const auto& c = model.covariance();
    // Standard error of a covariance estimate.
    auto se = [&](double cii, double cjj, double cij) {
        return std::sqrt((cii * cjj + cij * cij) / n_samples);
    };
    CHECK(std::abs(c_ii - c(i, i)) < 3.0 * se(c(i, i), c(i, i), c(i, i)) * 1.5);
    CHECK(std::abs(c_ij - c(i, j)) < 3.0 * se(c(i, i), c(j, j), c(i, j)));
    // Variance at a point equals 1.2 hbar G M^2 / R / dt.
    CHECK(c(i, i) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("scalar mode is unit-variance white noise") {
    NoiseModel model = NoiseModel::scalar();
    TrajectoryRng rng(9, 0);
    const double dt = 0.02;
    double acc = 0.0;
    const int n = 40000;
    for (int s = 0; s < n; ++s) {
        const double w = model.sample(dt, rng).scalar;
        acc += w * w;
    }
    CHECK(acc / n * dt == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("refined draws average the same stream") {
    const GridSpec grid(16, 8.0);
    KernelTable table(Kernel::ball_kernel(unit_ball), grid);
    NoiseModel model = NoiseModel::field(table, 1.0);
    TrajectoryRng coarse_rng(5, 1), fine_rng(5, 1);
    // One refined draw consumes two plain draws of the same stream and
    // averages them with the Brownian 1/sqrt(2).
    const NoiseFieldSample refined = model.sample(0.01, coarse_rng, 1);
    const NoiseFieldSample f1 = model.sample(0.01, fine_rng, 0);
    const NoiseFieldSample f2 = model.sample(0.01, fine_rng, 0);
    const Eigen::VectorXd expect = (f1.w + f2.w) / std::sqrt(2.0);
    CHECK((refined.w - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stochastic wave with noise off reduces to the frictional flow") {
    const GridSpec grid(128, 16.0);
    KernelTable table(Kernel::harmonic_kernel(1.0, 1.0), grid);
    NoiseModel noise = NoiseModel::scalar(); // unused
    WaveFunction a = gaussian_packet(grid, 0.0, 1.0);
    WaveFunction b = a;

    StochasticConfig scfg;
    scfg.dt = 1e-3;
    scfg.steps = 2000;
    scfg.noise_on = false;
    scfg.mixed_counterterm = false;
    TrajectoryRng rng(1, 0);
    evolve_stochastic_wave(a, table, noise, scfg, rng);

    EvolutionConfig ecfg;
    ecfg.dt = 1e-3;
    ecfg.steps = 2000;
    ecfg.record_stride = 2000;
    evolve_frsne(b, table, ecfg);
    CHECK(a.aligned_distance(b) < 1e-10);
}

TEST_CASE("stochastic master with noise off reduces to the decoherence propagator") {
    const GridSpec grid(64, 16.0);
    KernelTable table(Kernel::ball_kernel(unit_ball), grid);
    NoiseModel noise = NoiseModel::field(table, 1.0);
    WaveFunction cat = cat_state(grid, 4.0, 0.6);
    DensityMatrix a = DensityMatrix::pure(cat);
    DensityMatrix b = a;

    StochasticConfig scfg;
    scfg.dt = 1e-3;
    scfg.steps = 300;
    scfg.noise_on = false;
    TrajectoryRng rng(1, 0);
    evolve_stochastic_master(a, table, noise, scfg, rng);

    VnneConfig vcfg;
    vcfg.dt = 1e-3;
    vcfg.steps = 300;
    evolve_vnne(b, table, vcfg);
    CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("quadratic stochastic flow: stationary packet stays put without noise") {
    const GridSpec grid(128, 16.0);
    WaveFunction psi = frsne_quadratic_pointer(grid, 1.0, 1.0);
    const WaveFunction initial = psi;
    StochasticConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 5000;
    cfg.noise_on = false;
    TrajectoryRng rng(1, 0);
    evolve_quadratic_stochastic(psi, 1.0, cfg, rng);
    CHECK(psi.aligned_distance(initial) < 1e-3);
}

TEST_CASE("trajectories are bit-reproducible from the seed") {
    const GridSpec grid(64, 16.0);
    KernelTable table(Kernel::ball_kernel(unit_ball), grid);
    NoiseModel noise = NoiseModel::field(table, 1.0);
    StochasticConfig cfg;
    cfg.dt = 1e-4;
    cfg.steps = 400;
    auto run = [&] {
        WaveFunction psi = cat_state(grid, 4.0, 0.6);
        TrajectoryRng rng(123, 9);
        return evolve_stochastic_wave(psi, table, noise, cfg, rng);
    };
    const TrajectoryRecord r1 = run();
    const TrajectoryRecord r2 = run();
    REQUIRE(r1.series.size() == r2.series.size());
    for (std::size_t i = 0; i < r1.series.size(); ++i) {
        CHECK(r1.series[i].var_x == r2.series[i].var_x);
        CHECK(r1.series[i].mean_x == r2.series[i].mean_x);
    }
    for (int i = 0; i < grid.n; ++i) CHECK(r1.final_state.amp[i] == r2.final_state.amp[i]);
    CHECK(r1.collapse_time.has_value() == r2.collapse_time.has_value());
}

TEST_CASE("single master trajectory purifies and localizes a cat") {
    const GridSpec grid(64, 16.0);
    const BallSpec ball(1.0, 1.0, {50.0, 1.0});
    KernelTable table(Kernel::ball_kernel(ball), grid);
    NoiseModel noise = NoiseModel::field(table, 1.0);
    WaveFunction cat = cat_state(grid, 4.0, 0.6);
    DensityMatrix rho = DensityMatrix::pure(cat);
    // Start mixed: strip the off-diagonal cat coherence first.
    VnneConfig pre;
    pre.dt = 5e-4;
    pre.steps = 200;
    pre.kinetic = false;
    evolve_vnne(rho, table, pre);
    CHECK(rho.purity() < 0.7);

    StochasticConfig cfg;
    cfg.dt = 2e-5;
    cfg.steps = 25000;
    cfg.stop_on_collapse = true;
    TrajectoryRng rng(77, 0);
    MasterTrajectoryRecord rec = evolve_stochastic_master(rho, table, noise, cfg, rng);
    CHECK(rec.series.back().purity > 0.99);
    CHECK(rec.collapse_time.has_value());
}

TEST_CASE("wave ensemble: balanced cat collapses to either side") {
    const GridSpec grid(64, 16.0);
    const BallSpec ball(1.0, 1.0, {50.0, 1.0});
    KernelTable table(Kernel::ball_kernel(ball), grid);
    NoiseModel noise = NoiseModel::field(table, 1.0);
    WaveFunction cat = cat_state(grid, 4.0, 0.6);

    StochasticConfig cfg;
    cfg.dt = 2e-5;
    cfg.steps = 6000;
    cfg.stop_on_collapse = true;
    EnsembleConfig ens;
    ens.n_trajectories = 60;
    ens.master_seed = 2024;
    ens.keep_projectors = false;
    WaveEnsembleResult res = run_wave_ensemble(cat, table, noise, cfg, ens);

    int collapsed = 0, left = 0;
    for (const auto& r : res.records) {
        collapsed += r.collapse_time.has_value();
        left += r.branch < 0;
    }
    CHECK(collapsed == 60);
    CHECK(left > 15); // loose 3-sigma-ish band for N = 60
    CHECK(left < 45);
}
