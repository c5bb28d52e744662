#include "gravicollapse/evolution.hpp"

#include <cmath>

namespace gravicollapse {

SplitStepper::SplitStepper(const GridSpec& grid, const EvolutionConfig& cfg)
    : grid_(grid), hbar_(cfg.hbar), mass_(cfg.mass), fft_(grid.n), k2_(grid.n) {
    for (int j = 0; j < grid.n; ++j) {
        const double k = grid.wavenumber(j);
        k2_[j] = k * k;
    }
}

void SplitStepper::half_kinetic(Eigen::VectorXcd& amp, double dt) const {
    fft_.forward(amp);
    const double c = hbar_ * dt / (4.0 * mass_);
    for (int j = 0; j < grid_.n; ++j)
        amp[j] *= std::exp(std::complex<double>(0.0, -c * k2_[j]));
    fft_.inverse(amp);
}

void SplitStepper::half_kinetic_imaginary(Eigen::VectorXcd& amp, double dtau) const {
    fft_.forward(amp);
    const double c = hbar_ * dtau / (4.0 * mass_);
    for (int j = 0; j < grid_.n; ++j) amp[j] *= std::exp(-c * k2_[j]);
    fft_.inverse(amp);
}

double SplitStepper::kinetic_energy(const Eigen::VectorXcd& amp) const {
    Eigen::VectorXcd spec = amp;
    fft_.forward(spec);
    double acc = 0.0;
    for (int j = 0; j < grid_.n; ++j) acc += k2_[j] * std::norm(spec[j]);
    const double norm2 = spec.squaredNorm();
    if (norm2 == 0.0) return 0.0;
    return hbar_ * hbar_ / (2.0 * mass_) * acc / norm2;
}

void SplitStepper::check_stability(const Eigen::VectorXd& v, double dt, double hbar,
                                   double threshold) const {
    const double range = v.maxCoeff() - v.minCoeff();
    if (range * std::abs(dt) / hbar >= threshold)
        throw StabilityViolation("potential range * dt / hbar = " +
                                 std::to_string(range * std::abs(dt) / hbar) +
                                 " exceeds the stability guard");
}

SampleRow SplitStepper::sample(const WaveFunction& psi, const KernelTable* table,
                               double t, const EvolutionConfig& cfg) const {
    SampleRow row;
    row.t = t;
    Moments m = compute_moments(psi, table, cfg.hbar);
    row.norm_squared = m.norm_squared;
    row.mean_x = m.mean_x;
    row.var_x = m.var_x;
    row.mean_p = m.mean_p;
    row.var_p = m.var_p;
    row.u_g = m.u_g;
    row.energy = kinetic_energy(psi.amp) + 0.5 * m.u_g;
    if (cfg.external) {
        const Eigen::VectorXd rho = psi.density();
        row.energy += cfg.external->dot(rho) * grid_.spacing() / m.norm_squared;
    }
    return row;
}

Eigen::VectorXd harmonic_external(const GridSpec& grid, double mass, double omega) {
    Eigen::VectorXd v(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        v[i] = 0.5 * mass * omega * omega * x * x;
    }
    return v;
}

Eigen::VectorXd uniform_external(const GridSpec& grid, double force) {
    Eigen::VectorXd v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = -force * grid.x(i);
    return v;
}

} // namespace gravicollapse
