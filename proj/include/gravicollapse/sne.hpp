#pragma once

#include <complex>

#include "gravicollapse/evolution.hpp"

namespace gravicollapse {

// A localized, shape-stationary packet of the self-gravitating dynamics.
// width is the standard deviation of |psi|^2; width_factor is 1 for the
// reversible equation and sqrt(-i) = (1 - i)/sqrt(2) for the frictional one.
struct PointerState {
    WaveFunction state;
    double width = 0.0;
    std::complex<double> width_factor{1.0, 0.0};
    double energy = 0.0;
    long iterations = 0;
};

// Reversible self-gravitating evolution: Strang split, half kinetic ->
// nonlinear phase with V frozen at the half step -> half kinetic. Norm is
// conserved by construction; drift beyond cfg.norm_drift_abort aborts.
Trajectory evolve_sne(WaveFunction& psi, const KernelTable& table,
                      const EvolutionConfig& cfg);

struct GroundStateConfig {
    double tol = 1e-10;   // relative energy change between iterations
    double dtau = 0.0;    // 0 = choose from the kernel's omega
    long max_iterations = 200000;
    double hbar = 1.0;
    double mass = 1.0;
};

// Imaginary-time propagation with per-step renormalization until the
// relative energy change drops below tol. Returns the soliton.
PointerState ground_state_sne(const KernelTable& table, const GridSpec& grid,
                              const GroundStateConfig& cfg = {});

} // namespace gravicollapse
