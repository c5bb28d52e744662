#pragma once

#include <vector>

#include "gravicollapse/density_matrix.hpp"
#include "gravicollapse/evolution.hpp"

namespace gravicollapse {

struct DmSampleRow {
    double t = 0.0;
    double trace = 0.0;
    double purity = 0.0;
    double mean_x = 0.0;
    double var_x = 0.0;
    double min_eigenvalue = 0.0; // only filled when monitor_positivity is set
};

struct DmTrajectory {
    std::vector<DmSampleRow> series;
    bool positivity_warning = false;
};

struct VnneConfig {
    double dt = 1e-3;
    long steps = 1000;
    int record_stride = 10;
    bool kinetic = true;
    double hbar = 1.0;
    double mass = 1.0;
    bool monitor_positivity = false;
    double positivity_floor = -1e-6; // warning threshold, run continues
};

// Density-matrix propagator: unitary kinetic step applied from both sides,
// then the exact pointwise decay rho(x,x') *= exp(-[U(x-x') - U(0)] dt/hbar).
// The diagonal factor is exp(0) = 1, so the trace is conserved; Hermiticity
// is restored exactly after each step by symmetric averaging.
DmTrajectory evolve_vnne(DensityMatrix& rho, const KernelTable& table,
                         const VnneConfig& cfg);

// Decay factors exp(-[U(x_i - x_j) - U(0)] dt / hbar).
Eigen::MatrixXd vnne_decay_matrix(const KernelTable& table, double dt, double hbar);

// Spectral two-sided kinetic step rho <- K rho K^dagger.
class DmKineticStep {
  public:
    DmKineticStep(const GridSpec& grid, double dt, double mass, double hbar);
    void apply(Eigen::MatrixXcd& rho) const;

  private:
    GridSpec grid_;
    Fft fft_;
    Eigen::VectorXcd phase_;
};

} // namespace gravicollapse
