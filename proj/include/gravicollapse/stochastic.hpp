#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gravicollapse/density_matrix.hpp"
#include "gravicollapse/evolution.hpp"
#include "gravicollapse/noise.hpp"
#include "gravicollapse/vnne.hpp"

namespace gravicollapse {

// The stochastic equations carry no stochastic-calculus convention in their
// plain form; this integrator fixes one: an exponential-multiplicative
// update whose exponent is (Ito drift - noise variance rate / 2) dt + noise
// increment, followed by exact norm (trace) projection. With that
// compensator the ensemble mean of the trajectories reproduces the
// deterministic decoherence propagator to weak first order, which is the
// property the tests pin down. Setting the noise amplitude to zero removes
// the compensator with it, so the deterministic reductions are exact.
struct StochasticConfig {
    double dt = 1e-4;
    long steps = 1000;
    int record_stride = 20;
    bool kinetic = true;
    bool noise_on = true;
    double hbar = 1.0;
    double mass = 1.0;
    double collapse_threshold = 0.99; // single-window norm declaring collapse
    int refine_level = 0;             // noise sub-draws per step = 2^level
    long burnin_steps = 0;            // excluded from diffusion accumulators
    bool stop_on_collapse = false;
    // Wave-equation compensator: (U_G + U(0))/2 by default; set false to
    // restore the plain U_G counterterm (the noiseless frictional limit).
    bool mixed_counterterm = true;
};

struct StochasticRow {
    double t = 0.0;
    double preproj_norm_squared = 1.0; // before the norm projection
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double var_p = 0.0;
    double u_g = 0.0;
    double left_fraction = 0.0; // window norm left of the midpoint
};

struct TrajectoryRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t trajectory_index = 0;
    std::vector<StochasticRow> series;
    std::optional<double> collapse_time;
    int branch = 0; // -1 left window, +1 right window (dominant at the end)
    WaveFunction final_state;
    double max_preproj_drift = 0.0;  // max |norm^2 - 1| before projection
    double mean_preproj_drift = 0.0; // signed average of (norm^2 - 1)
    // Centroid diffusion accumulators (post burn-in): sum of squared
    // momentum-compensated centroid increments and the time they span.
    double diffusion_sq_sum = 0.0;
    double diffusion_time = 0.0;
    double var_x_min = 0.0;
    double var_x_max = 0.0;
};

// Stochastic wave equation with the correlated field: frictional drift with
// the (U_G + U(0))/2 renormalizing constant, multiplicative noise
// exp([W(x) - <W>] dt / hbar), per-step norm projection.
TrajectoryRecord evolve_stochastic_wave(WaveFunction& psi, const KernelTable& table,
                                        const NoiseModel& noise,
                                        const StochasticConfig& cfg, TrajectoryRng& rng);

// Harmonic-regime limit: scalar white noise w_t coupling through
// sqrt(M/hbar) omega (x - <x>), quadratic frictional drift.
TrajectoryRecord evolve_quadratic_stochastic(WaveFunction& psi, double omega,
                                             const StochasticConfig& cfg,
                                             TrajectoryRng& rng);

struct MasterTrajectoryRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t trajectory_index = 0;
    std::vector<DmSampleRow> series;
    DensityMatrix final_state;
    std::optional<double> collapse_time; // first time a window holds >= threshold
};

// Stochastic master equation: kinetic step, deterministic decay, then the
// multiplicative noise factor exp([W(x)+W(x')-2<W>] dt/hbar) with its
// compensator; Hermitize and renormalize the trace each step.
MasterTrajectoryRecord evolve_stochastic_master(DensityMatrix& rho,
                                                const KernelTable& table,
                                                const NoiseModel& noise,
                                                const StochasticConfig& cfg,
                                                TrajectoryRng& rng);

struct EnsembleConfig {
    int n_trajectories = 100;
    std::uint64_t master_seed = 1;
    int threads = 0; // 0 = hardware concurrency
    bool keep_projectors = true;
};

// Per-entry mean and Monte Carlo standard error of an ensemble of matrices.
struct EntryStats {
    Eigen::MatrixXcd mean;
    Eigen::MatrixXd se; // sqrt((Var Re + Var Im) / N)
    int n = 0;
};

struct WaveEnsembleResult {
    std::vector<TrajectoryRecord> records; // ordered by trajectory index
    EntryStats projector;                  // stats of psi psi^dagger at the end
};

struct MasterEnsembleResult {
    std::vector<MasterTrajectoryRecord> records;
    EntryStats mean_rho;
};

// Trajectories are independent tasks sharing only read-only tables;
// reduction is a deterministic ordered merge by trajectory index.
WaveEnsembleResult run_wave_ensemble(const WaveFunction& initial,
                                     const KernelTable& table, const NoiseModel& noise,
                                     const StochasticConfig& cfg,
                                     const EnsembleConfig& ens);

WaveEnsembleResult run_quadratic_ensemble(const WaveFunction& initial, double omega,
                                          const StochasticConfig& cfg,
                                          const EnsembleConfig& ens);

MasterEnsembleResult run_master_ensemble(const DensityMatrix& initial,
                                         const KernelTable& table,
                                         const NoiseModel& noise,
                                         const StochasticConfig& cfg,
                                         const EnsembleConfig& ens);

} // namespace gravicollapse
