#pragma once

#include <Eigen/Dense>

#include "gravicollapse/density_matrix.hpp"
#include "gravicollapse/kernel.hpp"
#include "gravicollapse/wavefunction.hpp"

namespace gravicollapse {

struct Moments {
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0; // symmetrized <{x - <x>, p - <p>}> / 2
    double u_g = 0.0;    // self-interaction energy integral of |psi|^2 against U
    double norm_squared = 0.0;
};

// V(x) = sum U(x - x') |psi(x')|^2 dx'. Equals the kernel table's spectral
// convolution of the state's density.
Eigen::VectorXd mean_field_potential(const WaveFunction& psi, const KernelTable& table);

// Moments of a wave function. Momentum moments are spectral. Pass the
// kernel table to fill u_g, nullptr to leave it 0.
Moments compute_moments(const WaveFunction& psi, const KernelTable* table = nullptr,
                        double hbar = 1.0);

// Position moments of a density matrix (mean_p/var_p left 0; diagonal only).
Moments compute_moments(const DensityMatrix& rho);

} // namespace gravicollapse
