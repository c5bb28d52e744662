#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "gravicollapse/kernel.hpp"

namespace gravicollapse {

// Deterministic per-trajectory random stream. Trajectory k of an ensemble
// with master seed S draws from a generator keyed by (S, k), so ensembles
// are reproducible and order-independent under parallel execution. The
// draw counter is part of the observable state.
class TrajectoryRng {
  public:
    TrajectoryRng(std::uint64_t master_seed, std::uint64_t trajectory_index = 0);

    double normal();
    void normal_fill(Eigen::VectorXd& z);
    std::uint64_t draws() const { return counter_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trajectory_index() const { return index_; }

  private:
    std::uint64_t master_seed_, index_, counter_ = 0;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct NoiseFieldSample {
    Eigen::VectorXd w; // field values at the grid points (field mode)
    double scalar = 0.0;
};

// White-noise field with spatial correlation
//   M[W_t(x) W_t'(x')] = -hbar U(x - x') delta(t - t'),
// realized as W = F z / sqrt(dt) with F F^T = C, C_ij = -hbar U(x_i - x_j).
// F comes from the symmetric eigendecomposition with negative eigenvalues
// (discretization noise) clipped at -1e-10 lambda_max; a spectrum below
// that is an error. The scalar mode covers the harmonic regime, where the
// field degenerates to standard white noise w_t coupling through
// sqrt(M/hbar) omega (x - <x>).
class NoiseModel {
  public:
    static NoiseModel field(const KernelTable& table, double hbar = 1.0,
                            double clip_tol = 1e-10);
    static NoiseModel scalar();

    bool is_field() const { return is_field_; }
    int size() const { return static_cast<int>(factor_.rows()); }
    const Eigen::MatrixXd& covariance() const { return covariance_; }
    const Eigen::MatrixXd& factor() const { return factor_; }
    double clipped_fraction() const { return clipped_fraction_; }

    // One step's field draw; refine_level > 0 averages 2^level sub-draws of
    // the same stream, so coarse and fine runs share Brownian increments.
    NoiseFieldSample sample(double dt, TrajectoryRng& rng, int refine_level = 0) const;

  private:
    bool is_field_ = false;
    Eigen::MatrixXd covariance_;
    Eigen::MatrixXd factor_;
    double clipped_fraction_ = 0.0;
};

NoiseFieldSample sample_noise(const NoiseModel& model, double dt, TrajectoryRng& rng);

} // namespace gravicollapse
