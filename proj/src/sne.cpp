#include "gravicollapse/sne.hpp"

#include <cmath>

namespace gravicollapse {

Trajectory evolve_sne(WaveFunction& psi, const KernelTable& table,
                      const EvolutionConfig& cfg) {
    SplitStepper stepper(psi.grid, cfg);
    Trajectory traj;
    traj.series.push_back(stepper.sample(psi, &table, 0.0, cfg));
    if (cfg.record_states) traj.states.push_back(psi);

    const double h_over = cfg.dt / cfg.hbar;
    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        Eigen::VectorXd v = table.mean_field(psi.density());
        if (cfg.external) v += *cfg.external;
        stepper.check_stability(v, cfg.dt, cfg.hbar, cfg.stability_threshold);
        for (int i = 0; i < psi.grid.n; ++i)
            psi.amp[i] *= std::exp(std::complex<double>(0.0, -v[i] * h_over));

        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        if (cfg.renormalize) psi.normalize();
        if (s % cfg.record_stride == 0 || s == cfg.steps) {
            SampleRow row = stepper.sample(psi, &table, s * cfg.dt, cfg);
            if (!cfg.renormalize &&
                std::abs(row.norm_squared - 1.0) > cfg.norm_drift_abort)
                throw NormDrift("norm^2 drifted to " + std::to_string(row.norm_squared));
            traj.series.push_back(row);
            if (cfg.record_states) traj.states.push_back(psi);
        }
    }
    return traj;
}

PointerState ground_state_sne(const KernelTable& table, const GridSpec& grid,
                              const GroundStateConfig& cfg) {
    const double omega = table.kernel().omega();
    const double dtau = cfg.dtau > 0.0 ? cfg.dtau
                                       : (omega > 0.0 ? 0.02 / omega : 0.02);
    EvolutionConfig ecfg;
    ecfg.dt = dtau;
    ecfg.hbar = cfg.hbar;
    ecfg.mass = cfg.mass;
    SplitStepper stepper(grid, ecfg);

    // Broad start so the relaxation has to find the width itself.
    WaveFunction psi = gaussian_packet(grid, 0.0, grid.length / 16.0);
    double prev_energy = 0.0;
    bool have_energy = false;
    long it = 0;
    for (; it < cfg.max_iterations; ++it) {
        stepper.half_kinetic_imaginary(psi.amp, dtau);
        Eigen::VectorXd v = table.mean_field(psi.density());
        // Shift to the minimum: pure overall scale in imaginary time, keeps
        // the exponentials tame.
        const double vmin = v.minCoeff();
        for (int i = 0; i < grid.n; ++i)
            psi.amp[i] *= std::exp(-(v[i] - vmin) * dtau / cfg.hbar);
        stepper.half_kinetic_imaginary(psi.amp, dtau);
        psi.normalize();

        if (it % 10 == 0) {
            const Moments m = compute_moments(psi, &table, cfg.hbar);
            const double energy = stepper.kinetic_energy(psi.amp) + 0.5 * m.u_g;
            if (have_energy) {
                const double scale = std::max(std::abs(energy), std::abs(prev_energy));
                if (scale > 0.0 && std::abs(energy - prev_energy) < cfg.tol * scale) {
                    prev_energy = energy;
                    break;
                }
            }
            prev_energy = energy;
            have_energy = true;
        }
    }
    if (it >= cfg.max_iterations)
        throw NoConvergence("ground_state_sne: no convergence after " +
                            std::to_string(cfg.max_iterations) + " iterations");

    PointerState ps;
    const Moments m = compute_moments(psi, &table, cfg.hbar);
    ps.state = std::move(psi);
    ps.width = std::sqrt(m.var_x);
    ps.width_factor = {1.0, 0.0};
    ps.energy = prev_energy;
    ps.iterations = it;
    return ps;
}

} // namespace gravicollapse
