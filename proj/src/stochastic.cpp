#include "gravicollapse/stochastic.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gravicollapse/moments.hpp"

namespace gravicollapse {

namespace {

double left_window_fraction(const WaveFunction& psi) {
    const Eigen::VectorXd rho = psi.density();
    const double h = psi.grid.spacing();
    double left = 0.0, total = 0.0;
    for (int i = 0; i < psi.grid.n; ++i) {
        const double w = rho[i] * h;
        total += w;
        if (psi.grid.x(i) < 0.0) left += w;
    }
    return left / total;
}

struct CollapseTracker {
    double threshold;
    std::optional<double> time;
    void update(double left_fraction, double t) {
        if (time) return;
        if (left_fraction >= threshold || 1.0 - left_fraction >= threshold) time = t;
    }
};

StochasticRow make_row(const WaveFunction& psi, const KernelTable* table, double t,
                       double preproj_norm2, double hbar) {
    StochasticRow row;
    row.t = t;
    row.preproj_norm_squared = preproj_norm2;
    const Moments m = compute_moments(psi, table, hbar);
    row.mean_x = m.mean_x;
    row.var_x = m.var_x;
    row.mean_p = m.mean_p;
    row.var_p = m.var_p;
    row.u_g = m.u_g;
    row.left_fraction = left_window_fraction(psi);
    return row;
}

double centroid(const WaveFunction& psi) {
    const Eigen::VectorXd rho = psi.density();
    double sx = 0.0, s = 0.0;
    for (int i = 0; i < psi.grid.n; ++i) {
        sx += psi.grid.x(i) * rho[i];
        s += rho[i];
    }
    return sx / s;
}

} // namespace

TrajectoryRecord evolve_stochastic_wave(WaveFunction& psi, const KernelTable& table,
                                        const NoiseModel& noise,
                                        const StochasticConfig& cfg, TrajectoryRng& rng) {
    EvolutionConfig ecfg;
    ecfg.hbar = cfg.hbar;
    ecfg.mass = cfg.mass;
    SplitStepper stepper(psi.grid, ecfg);
    const double h = psi.grid.spacing();
    const double u0 = table.u0();

    TrajectoryRecord rec;
    rec.master_seed = rng.master_seed();
    rec.trajectory_index = rng.trajectory_index();
    psi.normalize();
    rec.series.push_back(make_row(psi, &table, 0.0, 1.0, cfg.hbar));
    CollapseTracker collapse{cfg.collapse_threshold, {}};
    collapse.update(rec.series.back().left_fraction, 0.0);

    double drift_acc = 0.0;
    long drift_count = 0;
    rec.var_x_min = rec.series.front().var_x;
    rec.var_x_max = rec.series.front().var_x;

    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        const Eigen::VectorXd rho = psi.density();
        const double norm2 = rho.sum() * h;
        const Eigen::VectorXd v = table.mean_field(rho) / norm2;
        const double u_g = v.dot(rho) * h / norm2;

        Eigen::VectorXd expo(psi.grid.n);
        const double counterterm = cfg.mixed_counterterm ? 0.5 * (u_g + u0) : u_g;
        for (int i = 0; i < psi.grid.n; ++i)
            expo[i] = (-v[i] + counterterm) * cfg.dt / cfg.hbar;
        if (cfg.noise_on) {
            const NoiseFieldSample w = noise.sample(cfg.dt, rng, cfg.refine_level);
            double wbar = 0.0;
            for (int i = 0; i < psi.grid.n; ++i) wbar += w.w[i] * rho[i];
            wbar *= h / norm2;
            for (int i = 0; i < psi.grid.n; ++i) {
                const double sigma_rate = (-u0 + 2.0 * v[i] - u_g) / cfg.hbar;
                expo[i] += (w.w[i] - wbar) * cfg.dt / cfg.hbar - 0.5 * sigma_rate * cfg.dt;
            }
        }
        for (int i = 0; i < psi.grid.n; ++i) psi.amp[i] *= std::exp(expo[i]);

        const double preproj = psi.norm_squared();
        rec.max_preproj_drift = std::max(rec.max_preproj_drift, std::abs(preproj - 1.0));
        drift_acc += preproj - 1.0;
        ++drift_count;
        psi.normalize();

        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        const double t = s * cfg.dt;
        const double lf = left_window_fraction(psi);
        collapse.update(lf, t);
        if (s % cfg.record_stride == 0 || s == cfg.steps) {
            StochasticRow row = make_row(psi, &table, t, preproj, cfg.hbar);
            rec.var_x_min = std::min(rec.var_x_min, row.var_x);
            rec.var_x_max = std::max(rec.var_x_max, row.var_x);
            rec.series.push_back(row);
        }
        if (cfg.stop_on_collapse && collapse.time) break;
    }
    rec.collapse_time = collapse.time;
    rec.mean_preproj_drift = drift_count ? drift_acc / drift_count : 0.0;
    rec.branch = left_window_fraction(psi) >= 0.5 ? -1 : +1;
    rec.final_state = psi;
    return rec;
}

TrajectoryRecord evolve_quadratic_stochastic(WaveFunction& psi, double omega,
                                             const StochasticConfig& cfg,
                                             TrajectoryRng& rng) {
    EvolutionConfig ecfg;
    ecfg.hbar = cfg.hbar;
    ecfg.mass = cfg.mass;
    SplitStepper stepper(psi.grid, ecfg);
    const double gamma = cfg.mass * omega * omega / cfg.hbar;
    const double sqrt_gamma = std::sqrt(gamma);

    TrajectoryRecord rec;
    rec.master_seed = rng.master_seed();
    rec.trajectory_index = rng.trajectory_index();
    psi.normalize();
    rec.series.push_back(make_row(psi, nullptr, 0.0, 1.0, cfg.hbar));
    CollapseTracker collapse{cfg.collapse_threshold, {}};
    collapse.update(rec.series.back().left_fraction, 0.0);
    rec.var_x_min = rec.series.front().var_x;
    rec.var_x_max = rec.series.front().var_x;

    double drift_acc = 0.0;
    long drift_count = 0;
    double prev_mean_x = rec.series.front().mean_x;
    double prev_mean_p = rec.series.front().mean_p;

    NoiseModel scalar_noise = NoiseModel::scalar();

    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        const double xbar = centroid(psi);

        double z_over_sqrt_dt = 0.0;
        if (cfg.noise_on)
            z_over_sqrt_dt = scalar_noise.sample(cfg.dt, rng, cfg.refine_level).scalar;
        const double fric = cfg.noise_on ? gamma : 0.5 * gamma; // drift + Ito compensator
        for (int i = 0; i < psi.grid.n; ++i) {
            const double u = psi.grid.x(i) - xbar;
            const double expo =
                -fric * u * u * cfg.dt + sqrt_gamma * u * z_over_sqrt_dt * cfg.dt;
            psi.amp[i] *= std::exp(expo);
        }

        const double preproj = psi.norm_squared();
        rec.max_preproj_drift = std::max(rec.max_preproj_drift, std::abs(preproj - 1.0));
        drift_acc += preproj - 1.0;
        ++drift_count;
        psi.normalize();

        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        const double t = s * cfg.dt;
        // Momentum-compensated centroid increment feeds the diffusion
        // estimate; burn-in steps are excluded.
        const Moments m = compute_moments(psi, nullptr, cfg.hbar);
        if (s > cfg.burnin_steps) {
            const double inc = m.mean_x - prev_mean_x - prev_mean_p / cfg.mass * cfg.dt;
            rec.diffusion_sq_sum += inc * inc;
            rec.diffusion_time += cfg.dt;
            rec.var_x_min = std::min(rec.var_x_min, m.var_x);
            rec.var_x_max = std::max(rec.var_x_max, m.var_x);
        }
        prev_mean_x = m.mean_x;
        prev_mean_p = m.mean_p;

        const double lf = left_window_fraction(psi);
        collapse.update(lf, t);
        if (s % cfg.record_stride == 0 || s == cfg.steps) {
            StochasticRow row;
            row.t = t;
            row.preproj_norm_squared = preproj;
            row.mean_x = m.mean_x;
            row.var_x = m.var_x;
            row.mean_p = m.mean_p;
            row.var_p = m.var_p;
            row.left_fraction = lf;
            rec.series.push_back(row);
        }
        if (cfg.stop_on_collapse && collapse.time) break;
    }
    rec.collapse_time = collapse.time;
    rec.mean_preproj_drift = drift_count ? drift_acc / drift_count : 0.0;
    rec.branch = left_window_fraction(psi) >= 0.5 ? -1 : +1;
    rec.final_state = psi;
    return rec;
}

MasterTrajectoryRecord evolve_stochastic_master(DensityMatrix& rho,
                                                const KernelTable& table,
                                                const NoiseModel& noise,
                                                const StochasticConfig& cfg,
                                                TrajectoryRng& rng) {
    const int n = rho.grid.n;
    const double h = rho.grid.spacing();
    const Eigen::MatrixXd u = table.pair_matrix();
    const double u0 = table.u0();
    const Eigen::MatrixXd decay = ((u.array() - u0) * (-cfg.dt / cfg.hbar)).exp();
    // Ito compensator of the pairwise noise exponent; cancels the decay in
    // each realization, the decoherence re-emerges in the mean.
    const Eigen::MatrixXd comp = (u.array() * (cfg.dt / cfg.hbar)).exp();
    DmKineticStep kin(rho.grid, cfg.dt, cfg.mass, cfg.hbar);

    MasterTrajectoryRecord rec;
    rec.master_seed = rng.master_seed();
    rec.trajectory_index = rng.trajectory_index();
    CollapseTracker collapse{cfg.collapse_threshold, {}};

    auto record = [&](double t) {
        DmSampleRow row;
        row.t = t;
        row.trace = rho.trace();
        row.purity = rho.purity();
        const Moments m = compute_moments(rho);
        row.mean_x = m.mean_x;
        row.var_x = m.var_x;
        rec.series.push_back(row);
    };
    rho.renormalize_trace();
    record(0.0);

    Eigen::VectorXd f(n);
    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) kin.apply(rho.rho);
        rho.rho.array() *= decay.array();
        if (cfg.noise_on) {
            const Eigen::VectorXd diag = rho.rho.diagonal().real();
            const double tr = diag.sum() * h;
            const NoiseFieldSample w = noise.sample(cfg.dt, rng, cfg.refine_level);
            const Eigen::VectorXd v = (u * diag) * h / tr; // mean field of the diagonal
            const double ugg = v.dot(diag) * h / tr;
            const double wbar = w.w.dot(diag) * h / tr;
            for (int i = 0; i < n; ++i)
                f[i] = std::exp((w.w[i] - 2.0 * v[i]) * cfg.dt / cfg.hbar);
            const double c = std::exp((u0 + 2.0 * ugg - 2.0 * wbar) * cfg.dt / cfg.hbar);
            rho.rho.array() *= (c * (f * f.transpose()).array() * comp.array());
        }
        rho.hermitize();
        rho.renormalize_trace();

        const double t = s * cfg.dt;
        const Eigen::VectorXd diag = rho.rho.diagonal().real();
        double left = 0.0;
        for (int i = 0; i < n; ++i)
            if (rho.grid.x(i) < 0.0) left += diag[i];
        collapse.update(left * h, t);
        if (s % cfg.record_stride == 0 || s == cfg.steps) record(t);
        if (cfg.stop_on_collapse && collapse.time) break;
    }
    rec.collapse_time = collapse.time;
    rec.final_state = rho;
    return rec;
}

namespace {

template <class Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

EntryStats reduce_matrices(const std::vector<Eigen::MatrixXcd>& mats) {
    EntryStats st;
    st.n = static_cast<int>(mats.size());
    if (mats.empty()) return st;
    const auto rows = mats.front().rows(), cols = mats.front().cols();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(rows, cols);
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(rows, cols);
    for (const auto& m : mats) { // index order: deterministic reduction
        sum += m;
        sq += m.cwiseAbs2();
    }
    st.mean = sum / double(st.n);
    // Var(Re) + Var(Im) = E|z|^2 - |E z|^2
    Eigen::MatrixXd var = sq / double(st.n) - st.mean.cwiseAbs2();
    var = var.cwiseMax(0.0);
    st.se = (var / double(st.n)).cwiseSqrt();
    return st;
}

} // namespace

WaveEnsembleResult run_wave_ensemble(const WaveFunction& initial,
                                     const KernelTable& table, const NoiseModel& noise,
                                     const StochasticConfig& cfg,
                                     const EnsembleConfig& ens) {
    WaveEnsembleResult res;
    res.records.resize(ens.n_trajectories);
    parallel_for_index(ens.n_trajectories, ens.threads, [&](int k) {
        WaveFunction psi = initial;
        TrajectoryRng rng(ens.master_seed, static_cast<std::uint64_t>(k));
        res.records[k] = evolve_stochastic_wave(psi, table, noise, cfg, rng);
    });
    if (ens.keep_projectors) {
        std::vector<Eigen::MatrixXcd> projectors(ens.n_trajectories);
        for (int k = 0; k < ens.n_trajectories; ++k) {
            const auto& amp = res.records[k].final_state.amp;
            projectors[k] = amp * amp.adjoint();
        }
        res.projector = reduce_matrices(projectors);
    }
    return res;
}

WaveEnsembleResult run_quadratic_ensemble(const WaveFunction& initial, double omega,
                                          const StochasticConfig& cfg,
                                          const EnsembleConfig& ens) {
    WaveEnsembleResult res;
    res.records.resize(ens.n_trajectories);
    parallel_for_index(ens.n_trajectories, ens.threads, [&](int k) {
        WaveFunction psi = initial;
        TrajectoryRng rng(ens.master_seed, static_cast<std::uint64_t>(k));
        res.records[k] = evolve_quadratic_stochastic(psi, omega, cfg, rng);
    });
    if (ens.keep_projectors) {
        std::vector<Eigen::MatrixXcd> projectors(ens.n_trajectories);
        for (int k = 0; k < ens.n_trajectories; ++k) {
            const auto& amp = res.records[k].final_state.amp;
            projectors[k] = amp * amp.adjoint();
        }
        res.projector = reduce_matrices(projectors);
    }
    return res;
}

MasterEnsembleResult run_master_ensemble(const DensityMatrix& initial,
                                         const KernelTable& table,
                                         const NoiseModel& noise,
                                         const StochasticConfig& cfg,
                                         const EnsembleConfig& ens) {
    MasterEnsembleResult res;
    res.records.resize(ens.n_trajectories);
    parallel_for_index(ens.n_trajectories, ens.threads, [&](int k) {
        DensityMatrix rho = initial;
        TrajectoryRng rng(ens.master_seed, static_cast<std::uint64_t>(k));
        res.records[k] = evolve_stochastic_master(rho, table, noise, cfg, rng);
    });
    std::vector<Eigen::MatrixXcd> finals(ens.n_trajectories);
    for (int k = 0; k < ens.n_trajectories; ++k)
        finals[k] = res.records[k].final_state.rho;
    res.mean_rho = reduce_matrices(finals);
    return res;
}

} // namespace gravicollapse
