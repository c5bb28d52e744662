#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gravicollapse/kernel.hpp"
#include "gravicollapse/moments.hpp"
#include "gravicollapse/spectral.hpp"
#include "gravicollapse/wavefunction.hpp"

namespace gravicollapse {

struct EvolutionConfig {
    double dt = 1e-3;
    long steps = 1000;
    int record_stride = 10;
    bool record_states = false;
    bool renormalize = false; // per-step norm projection (imaginary time etc.)
    bool kinetic = true;
    double hbar = 1.0;
    double mass = 1.0;
    std::optional<Eigen::VectorXd> external; // external potential on the grid
    // Guard on the frozen-potential splitting error: (max V - min V) dt / hbar
    // must stay below this. Constant offsets of V are gauge and ignored.
    double stability_threshold = 0.1;
    double norm_drift_abort = 1e-6; // unitary evolutions abort past this
};

struct SampleRow {
    double t = 0.0;
    double norm_squared = 0.0;
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double var_p = 0.0;
    double energy = 0.0; // <K> + 1/2 U_G + <V_ext>
    double u_g = 0.0;
    double counterterm_gap = 0.0; // frictional runs: |c - U_G| of the step
};

struct Trajectory {
    std::vector<SampleRow> series;
    std::vector<WaveFunction> states; // filled when record_states is set
};

// Shared Strang-splitting machinery: spectral kinetic half steps plus
// moment/energy evaluation. One instance per evolution (owns its FFT).
class SplitStepper {
  public:
    SplitStepper(const GridSpec& grid, const EvolutionConfig& cfg);

    // exp(-i hbar k^2 dt / 4M) in the spectral basis; dt sign follows cfg.
    void half_kinetic(Eigen::VectorXcd& amp, double dt) const;
    // Imaginary-time variant exp(-hbar k^2 dtau / 4M).
    void half_kinetic_imaginary(Eigen::VectorXcd& amp, double dtau) const;
    double kinetic_energy(const Eigen::VectorXcd& amp) const;
    const GridSpec& grid() const { return grid_; }

    void check_stability(const Eigen::VectorXd& v, double dt, double hbar,
                         double threshold) const;

    SampleRow sample(const WaveFunction& psi, const KernelTable* table, double t,
                     const EvolutionConfig& cfg) const;

  private:
    GridSpec grid_;
    double hbar_, mass_;
    Fft fft_;
    Eigen::VectorXd k2_; // k^2 per spectral index
};

// Samples of supported external potentials on the grid.
Eigen::VectorXd harmonic_external(const GridSpec& grid, double mass, double omega);
Eigen::VectorXd uniform_external(const GridSpec& grid, double force);

} // namespace gravicollapse
