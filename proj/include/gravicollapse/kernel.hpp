#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "gravicollapse/ball.hpp"
#include "gravicollapse/errors.hpp"
#include "gravicollapse/grid.hpp"

namespace gravicollapse {

// omega_G = sqrt(G M / R^3), the frequency of the effective harmonic trap
// the ball's self-kernel produces at small separations.
double gravitational_frequency(const BallSpec& ball);

// sqrt(hbar / (M omega_G)): the characteristic soliton length
// (hbar^2 / G M^3)^(1/4) R^(3/4). Used for regime classification and
// physical-unit reporting.
double soliton_length_scale(const BallSpec& ball);

// Standard deviation of the self-trapped ground state in the harmonic
// regime: sqrt(hbar / (2 M omega_G)) = soliton_length_scale / sqrt(2).
double ground_state_sigma(const BallSpec& ball);

// Mutual Newtonian potential of two interpenetrating copies of the ball at
// center separation d. Closed form: a fifth-degree polynomial in d/R for
// d < 2R, and exactly -G M^2 / d for d >= 2R (shell theorem). Continuous
// with continuous first derivative at d = 2R.
double pair_potential(const BallSpec& ball, double d);

// U(0) = -(6/5) G M^2 / R, the full-overlap depth.
double pair_potential_zero(const BallSpec& ball);

struct PointPotential {
    double value;  // -G M^2 / sqrt(d^2 + eps^2); -inf when singular
    bool singular; // true iff eps = 0 and d = 0
};

// Point-mass potential with optional softening. The d = 0, eps = 0
// singularity is reported through the flag, never thrown, so parameter
// sweeps across R -> 0 can complete.
PointPotential point_potential(const BallSpec& ball, double d, double softening);

// Pair-potential model consumed by the grid solvers. Covers the rigid-ball
// closed form, the (softened) point kernel, the exact harmonic kernel used
// in harmonic-mode runs, and the zero kernel (free evolution).
class Kernel {
  public:
    enum class Type { ball, point, harmonic, zero };

    static Kernel ball_kernel(const BallSpec& ball);
    static Kernel point_kernel(const BallSpec& ball, double softening);
    // U(d) = u0 + 1/2 M omega^2 d^2, exact at all separations.
    static Kernel harmonic_kernel(double mass, double omega, double u0 = 0.0);
    static Kernel zero_kernel();

    Type type() const { return type_; }
    double operator()(double d) const; // U(d); d >= 0 enforced by |d|
    double u0() const { return u0_; }
    // sqrt(G M / R^3) for ball/point kernels, the given omega for harmonic,
    // 0 for the zero kernel.
    double omega() const { return omega_; }
    double mass() const { return mass_; }
    bool singular() const { return singular_; }

  private:
    Type type_ = Type::zero;
    double g_ = 0.0, mass_ = 1.0, radius_ = 0.0, softening_ = 0.0;
    double omega_ = 0.0, u0_ = 0.0;
    bool singular_ = false;
};

// Kernel discretized on a grid: U sampled at every pairwise separation the
// padded aperiodic convolution can see, plus the spectral image of that
// table. Immutable after construction; shared read-only by all solvers and
// trajectories.
class KernelTable {
  public:
    KernelTable(const Kernel& kernel, const GridSpec& grid);

    const Kernel& kernel() const { return kernel_; }
    const GridSpec& grid() const { return grid_; }
    double u0() const { return kernel_.u0(); }

    // U at circular offset index of the padded convolution buffer.
    const Eigen::VectorXd& padded_samples() const { return padded_; }

    // V(x_i) = sum_j U(x_i - x_j) density_j h via zero-padded spectral
    // convolution. `density` is |psi|^2 on the grid.
    Eigen::VectorXd mean_field(const Eigen::VectorXd& density) const;

    // Direct O(n^2) summation; the oracle route kept alongside the spectral
    // one.
    Eigen::VectorXd mean_field_direct(const Eigen::VectorXd& density) const;

    // Dense matrix U(x_i - x_j); feeds the decoherence propagator and the
    // noise covariance.
    Eigen::MatrixXd pair_matrix() const;

  private:
    Kernel kernel_;
    GridSpec grid_;
    Eigen::VectorXd padded_;               // circular kernel samples, length padding*n
    Eigen::VectorXcd padded_fft_;          // FFT of the above
};

// Legacy-shaped entry point: validates and builds the table.
// Throws UnsoftenedPointKernel for an unsoftened point kernel.
KernelTable build_grid_kernel(const Kernel& kernel, const GridSpec& grid);

} // namespace gravicollapse
