#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "gravicollapse/grid.hpp"

namespace gravicollapse {

// Complex amplitudes on a grid, dimension length^(-1/2). Single-owner
// mutable buffer: one evolution context at a time.
struct WaveFunction {
    GridSpec grid;
    Eigen::VectorXcd amp;

    WaveFunction() = default;
    explicit WaveFunction(const GridSpec& g) : grid(g), amp(Eigen::VectorXcd::Zero(g.n)) {}

    double norm_squared() const { return amp.squaredNorm() * grid.spacing(); }
    void normalize();
    Eigen::VectorXd density() const { return amp.cwiseAbs2(); }

    // |<phi|psi>| after optimal global-phase alignment; both normalized.
    // Returns the L2 distance min_theta ||psi - e^{i theta} phi||.
    double aligned_distance(const WaveFunction& other) const;

    void save_csv(const std::string& path, double t = 0.0) const;
    // Little-endian layout: uint64 n, double L, double t, then n pairs of
    // (Re psi_i, Im psi_i) doubles.
    void save_binary(const std::string& path, double t = 0.0) const;
    static WaveFunction load_binary(const std::string& path, double* t_out = nullptr);
};

// Normalized Gaussian exp(-(x-center)^2 / (4 width^2) + i momentum x / hbar):
// width is the standard deviation of |psi|^2. Requires width > 2h and the
// packet (center +- 6 width) inside the domain.
WaveFunction gaussian_packet(const GridSpec& grid, double center, double width,
                             double momentum = 0.0, double hbar = 1.0);

// Gaussian with a complex width factor w: exp(-w (x-center)^2 / (4 width^2)),
// normalized. w = 1 reproduces gaussian_packet.
WaveFunction gaussian_packet_complex(const GridSpec& grid, double center, double width,
                                     std::complex<double> width_factor);

// Balanced superposition of two packets at +-separation/2, renormalized.
WaveFunction cat_state(const GridSpec& grid, double separation, double width,
                       double momentum = 0.0, double hbar = 1.0);

} // namespace gravicollapse
