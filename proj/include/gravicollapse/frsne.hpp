#pragma once

#include "gravicollapse/evolution.hpp"
#include "gravicollapse/sne.hpp"

namespace gravicollapse {

// Frictional self-gravitating evolution: the nonlinear term enters as a
// real damping factor exp(-[V(x) - c] dt / hbar). The scalar counterterm c
// is evaluated so the damping substep conserves the norm exactly; its
// dt -> 0 limit is U_G, and each recorded row carries |c - U_G|.
Trajectory evolve_frsne(WaveFunction& psi, const KernelTable& table,
                        const EvolutionConfig& cfg);

struct RelaxConfig {
    double dt = 1e-3;
    // Converged when the aligned L2 shape change per unit time drops below
    // this.
    double tol = 1e-9;
    long max_steps = 2000000;
    long check_stride = 200;
    double hbar = 1.0;
    double mass = 1.0;
};

// Long-time frictional relaxation from a generic packet; the equation's own
// dynamics is the relaxer. Returns the stationary packet and its measured
// width.
PointerState pointer_state_frsne(const KernelTable& table, const GridSpec& grid,
                                 const RelaxConfig& cfg = {});

// Exact stationary packet of the frictional dynamics under the harmonic
// kernel: exp(-sqrt(-i) x^2 / (4 s^2)) with s^2 = hbar / (2 m omega).
WaveFunction frsne_quadratic_pointer(const GridSpec& grid, double mass, double omega,
                                     double hbar = 1.0, double center = 0.0);

} // namespace gravicollapse
