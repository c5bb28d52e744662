#include "gravicollapse/vnne.hpp"

#include <cmath>

#include "gravicollapse/moments.hpp"

namespace gravicollapse {

Eigen::MatrixXd vnne_decay_matrix(const KernelTable& table, double dt, double hbar) {
    const Eigen::MatrixXd u = table.pair_matrix();
    const double u0 = table.u0();
    return ((u.array() - u0) * (-dt / hbar)).exp();
}

DmKineticStep::DmKineticStep(const GridSpec& grid, double dt, double mass, double hbar)
    : grid_(grid), fft_(grid.n), phase_(grid.n) {
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumber(j);
        phase_[j] = std::exp(std::complex<double>(0.0, -hbar * k * k * dt / (2.0 * mass)));
    }
}

void DmKineticStep::apply(Eigen::MatrixXcd& rho) const {
    const int n = grid_.n;
    Eigen::VectorXcd col(n);
    // K acting on the first index: transform every column.
    for (int j = 0; j < n; ++j) {
        col = rho.col(j);
        fft_.forward(col);
        col.array() *= phase_.array();
        fft_.inverse(col);
        rho.col(j) = col;
    }
    // K^dagger from the right, via rho <- (K rho^dagger)^dagger.
    Eigen::MatrixXcd adj = rho.adjoint();
    for (int j = 0; j < n; ++j) {
        col = adj.col(j);
        fft_.forward(col);
        col.array() *= phase_.array();
        fft_.inverse(col);
        adj.col(j) = col;
    }
    rho = adj.adjoint();
}

DmTrajectory evolve_vnne(DensityMatrix& rho, const KernelTable& table,
                         const VnneConfig& cfg) {
    const Eigen::MatrixXd decay = vnne_decay_matrix(table, cfg.dt, cfg.hbar);
    DmKineticStep kin(rho.grid, cfg.dt, cfg.mass, cfg.hbar);

    DmTrajectory traj;
    auto record = [&](double t) {
        DmSampleRow row;
        row.t = t;
        row.trace = rho.trace();
        row.purity = rho.purity();
        const Moments m = compute_moments(rho);
        row.mean_x = m.mean_x;
        row.var_x = m.var_x;
        if (cfg.monitor_positivity) {
            row.min_eigenvalue = rho.min_eigenvalue();
            if (row.min_eigenvalue < cfg.positivity_floor) traj.positivity_warning = true;
        }
        traj.series.push_back(row);
    };
    record(0.0);

    for (long s = 1; s <= cfg.steps; ++s) {
        if (cfg.kinetic) kin.apply(rho.rho);
        rho.rho.array() *= decay.array();
        rho.hermitize();
        if (s % cfg.record_stride == 0 || s == cfg.steps) record(s * cfg.dt);
    }
    return traj;
}

} // namespace gravicollapse
