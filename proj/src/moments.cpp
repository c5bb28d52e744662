#include "gravicollapse/moments.hpp"

#include <complex>

#include "gravicollapse/spectral.hpp"

namespace gravicollapse {

Eigen::VectorXd mean_field_potential(const WaveFunction& psi, const KernelTable& table) {
    return table.mean_field(psi.density());
}

Moments compute_moments(const WaveFunction& psi, const KernelTable* table, double hbar) {
    const GridSpec& g = psi.grid;
    const double h = g.spacing();
    Moments m;
    m.norm_squared = psi.norm_squared();

    const Eigen::VectorXd rho = psi.density();
    double sx = 0.0, sx2 = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        sx += x * rho[i];
        sx2 += x * x * rho[i];
    }
    m.mean_x = sx * h / m.norm_squared;
    m.var_x = sx2 * h / m.norm_squared - m.mean_x * m.mean_x;

    // Momentum moments from the spectral representation; Parseval fixes the
    // (h/n) weight.
    Eigen::VectorXcd spec = psi.amp;
    Fft fft(g.n);
    fft.forward(spec);
    double sp = 0.0, sp2 = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double k = g.wavenumber(j);
        const double w = std::norm(spec[j]);
        sp += k * w;
        sp2 += k * k * w;
    }
    const double kw = h / g.n / m.norm_squared;
    m.mean_p = hbar * sp * kw;
    m.var_p = hbar * hbar * sp2 * kw - m.mean_p * m.mean_p;

    // Symmetrized covariance via the spectral derivative.
    Eigen::VectorXcd dpsi = spec;
    for (int j = 0; j < g.n; ++j)
        dpsi[j] *= std::complex<double>(0.0, g.wavenumber(j));
    fft.inverse(dpsi);
    std::complex<double> xp = 0.0;
    for (int i = 0; i < g.n; ++i)
        xp += std::conj(psi.amp[i]) * g.x(i) * (std::complex<double>(0.0, -hbar) * dpsi[i]);
    m.cov_xp = (xp * h).real() / m.norm_squared - m.mean_x * m.mean_p;

    if (table) {
        const Eigen::VectorXd v = table->mean_field(rho);
        m.u_g = v.dot(rho) * h / (m.norm_squared * m.norm_squared);
    }
    return m;
}

Moments compute_moments(const DensityMatrix& dm) {
    const GridSpec& g = dm.grid;
    const double h = g.spacing();
    Moments m;
    const Eigen::VectorXd diag = dm.diagonal_density();
    m.norm_squared = diag.sum() * h;
    double sx = 0.0, sx2 = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        sx += x * diag[i];
        sx2 += x * x * diag[i];
    }
    m.mean_x = sx * h / m.norm_squared;
    m.var_x = sx2 * h / m.norm_squared - m.mean_x * m.mean_x;
    return m;
}

} // namespace gravicollapse
