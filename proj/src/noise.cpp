#include "gravicollapse/noise.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gravicollapse/errors.hpp"

namespace gravicollapse {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace

TrajectoryRng::TrajectoryRng(std::uint64_t master_seed, std::uint64_t trajectory_index)
    : master_seed_(master_seed), index_(trajectory_index),
      engine_(splitmix64(splitmix64(master_seed) ^ (trajectory_index + 0x1234567ULL))) {}

double TrajectoryRng::normal() {
    ++counter_;
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on open-interval uniforms; no stdlib distribution so the
    // stream is identical across standard libraries.
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    const double u2 =
        (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

void TrajectoryRng::normal_fill(Eigen::VectorXd& z) {
    for (int i = 0; i < z.size(); ++i) z[i] = normal();
}

NoiseModel NoiseModel::field(const KernelTable& table, double hbar, double clip_tol) {
    NoiseModel m;
    m.is_field_ = true;
    m.covariance_ = (-hbar) * table.pair_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.covariance_);
    Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (!(lmax > 0.0))
        throw NotPositiveSemidefinite("noise covariance has no positive spectrum");
    int clipped = 0;
    for (int i = 0; i < lam.size(); ++i) {
        if (lam[i] < -clip_tol * lmax)
            throw NotPositiveSemidefinite(
                "noise covariance eigenvalue " + std::to_string(lam[i]) +
                " below the clipping tolerance");
        if (lam[i] < 0.0) {
            lam[i] = 0.0;
            ++clipped;
        }
    }
    m.clipped_fraction_ = static_cast<double>(clipped) / lam.size();
    m.factor_ = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
    return m;
}

NoiseModel NoiseModel::scalar() {
    NoiseModel m;
    m.is_field_ = false;
    return m;
}

NoiseFieldSample NoiseModel::sample(double dt, TrajectoryRng& rng, int refine_level) const {
    if (!(dt > 0.0)) throw ConfigError("NoiseModel::sample: dt must be > 0");
    const int repeats = 1 << refine_level;
    NoiseFieldSample s;
    if (is_field_) {
        const int n = size();
        Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd zk(n);
        for (int r = 0; r < repeats; ++r) {
            rng.normal_fill(zk);
            z += zk;
        }
        z /= std::sqrt(static_cast<double>(repeats));
        s.w = factor_ * z / std::sqrt(dt);
    } else {
        double z = 0.0;
        for (int r = 0; r < repeats; ++r) z += rng.normal();
        s.scalar = z / std::sqrt(static_cast<double>(repeats)) / std::sqrt(dt);
    }
    return s;
}

NoiseFieldSample sample_noise(const NoiseModel& model, double dt, TrajectoryRng& rng) {
    return model.sample(dt, rng);
}

} // namespace gravicollapse
