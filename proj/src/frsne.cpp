#include "gravicollapse/frsne.hpp"

#include <cmath>

namespace gravicollapse {

namespace {

// Applies the frictional substep in place and returns the exact scalar
// counterterm c that kept the substep norm at its input value.
double frictional_substep(WaveFunction& psi, const Eigen::VectorXd& v, double dt,
                          double hbar) {
    const double n2_before = psi.norm_squared();
    const double vref = v.minCoeff(); // gauge shift, keeps exp() in range
    for (int i = 0; i < psi.grid.n; ++i)
        psi.amp[i] *= std::exp(-(v[i] - vref) * dt / hbar);
    const double n2_after = psi.norm_squared();
    // exp(2 (c - vref) dt / hbar) * n2_after = n2_before
    const double c = vref + hbar / (2.0 * dt) * std::log(n2_before / n2_after);
    psi.amp *= std::sqrt(n2_before / n2_after);
    return c;
}

} // namespace

Trajectory evolve_frsne(WaveFunction& psi, const KernelTable& table,
                        const EvolutionConfig& cfg) {
    SplitStepper stepper(psi.grid, cfg);
    Trajectory traj;
    traj.series.push_back(stepper.sample(psi, &table, 0.0, cfg));
    if (cfg.record_states) traj.states.push_back(psi);

    double last_gap = 0.0;
    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        const Eigen::VectorXd rho = psi.density();
        Eigen::VectorXd v = table.mean_field(rho);
        stepper.check_stability(v, cfg.dt, cfg.hbar, cfg.stability_threshold);
        const double norm2 = rho.sum() * psi.grid.spacing();
        const double u_g = v.dot(rho) * psi.grid.spacing() / (norm2 * norm2);

        if (cfg.external) {
            // External potential stays Hamiltonian: unitary phase.
            for (int i = 0; i < psi.grid.n; ++i)
                psi.amp[i] *=
                    std::exp(std::complex<double>(0.0, -(*cfg.external)[i] * cfg.dt / cfg.hbar));
        }
        const double c = frictional_substep(psi, v, cfg.dt, cfg.hbar);
        last_gap = std::abs(c - u_g);

        if (cfg.kinetic) stepper.half_kinetic(psi.amp, cfg.dt);

        if (s % cfg.record_stride == 0 || s == cfg.steps) {
            SampleRow row = stepper.sample(psi, &table, s * cfg.dt, cfg);
            row.counterterm_gap = last_gap;
            traj.series.push_back(row);
            if (cfg.record_states) traj.states.push_back(psi);
        }
    }
    return traj;
}

PointerState pointer_state_frsne(const KernelTable& table, const GridSpec& grid,
                                 const RelaxConfig& cfg) {
    EvolutionConfig ecfg;
    ecfg.dt = cfg.dt;
    ecfg.hbar = cfg.hbar;
    ecfg.mass = cfg.mass;
    ecfg.steps = cfg.check_stride;
    ecfg.record_stride = cfg.check_stride;

    WaveFunction psi = gaussian_packet(grid, 0.0, grid.length / 16.0);
    WaveFunction prev = psi;
    long total = 0;
    while (total < cfg.max_steps) {
        evolve_frsne(psi, table, ecfg);
        total += cfg.check_stride;
        const double dist = psi.aligned_distance(prev);
        const double rate = dist / (cfg.check_stride * cfg.dt);
        if (rate < cfg.tol) break;
        prev = psi;
    }
    if (total >= cfg.max_steps)
        throw NoConvergence("pointer_state_frsne: shape still changing after " +
                            std::to_string(total) + " steps");

    PointerState ps;
    const Moments m = compute_moments(psi, &table, cfg.hbar);
    SplitStepper stepper(grid, ecfg);
    ps.energy = stepper.kinetic_energy(psi.amp) + 0.5 * m.u_g;
    ps.width = std::sqrt(m.var_x);
    ps.width_factor = std::complex<double>(1.0, -1.0) / std::sqrt(2.0);
    ps.state = std::move(psi);
    ps.iterations = total;
    return ps;
}

WaveFunction frsne_quadratic_pointer(const GridSpec& grid, double mass, double omega,
                                     double hbar, double center) {
    const double s2 = hbar / (2.0 * mass * omega);
    const std::complex<double> sqrt_minus_i(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
    return gaussian_packet_complex(grid, center, std::sqrt(s2), sqrt_minus_i);
}

} // namespace gravicollapse
