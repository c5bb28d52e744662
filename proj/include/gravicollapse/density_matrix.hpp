#pragma once

#include <Eigen/Dense>

#include "gravicollapse/grid.hpp"
#include "gravicollapse/wavefunction.hpp"

namespace gravicollapse {

// Center-of-mass density matrix rho(x_i, x_j), dimension length^(-1).
// Hermitian with unit trace (trace() includes the h weight). Dense storage;
// intended for desk-scale grids (n <= 512).
struct DensityMatrix {
    GridSpec grid;
    Eigen::MatrixXcd rho;

    DensityMatrix() = default;
    explicit DensityMatrix(const GridSpec& g)
        : grid(g), rho(Eigen::MatrixXcd::Zero(g.n, g.n)) {}

    static DensityMatrix pure(const WaveFunction& psi) {
        DensityMatrix dm(psi.grid);
        dm.rho = psi.amp * psi.amp.adjoint();
        return dm;
    }

    double trace() const { return rho.trace().real() * grid.spacing(); }
    // Tr rho^2 = sum |rho_ij|^2 h^2; equals 1 for pure states.
    double purity() const {
        const double h = grid.spacing();
        return rho.squaredNorm() * h * h;
    }
    double hermiticity_defect() const {
        return (rho - rho.adjoint()).norm();
    }
    void hermitize() { rho = 0.5 * (rho + rho.adjoint()).eval(); }
    void renormalize_trace() {
        const double tr = trace();
        if (tr != 0.0) rho /= tr;
    }
    // Smallest eigenvalue of the (h-weighted) operator; >= -1e-8 expected
    // after evolution.
    double min_eigenvalue() const;
    Eigen::VectorXd diagonal_density() const { return rho.diagonal().real(); }
};

} // namespace gravicollapse
