#include "gravicollapse/kernel.hpp"

#include <cmath>
#include <limits>

#include "gravicollapse/spectral.hpp"

namespace gravicollapse {

double gravitational_frequency(const BallSpec& ball) {
    if (ball.pointlike())
        throw ZeroRadius("gravitational_frequency: undefined for R = 0");
    const double r3 = ball.radius * ball.radius * ball.radius;
    return std::sqrt(ball.constants.G * ball.mass / r3);
}

double soliton_length_scale(const BallSpec& ball) {
    return std::sqrt(ball.constants.hbar / (ball.mass * gravitational_frequency(ball)));
}

double ground_state_sigma(const BallSpec& ball) {
    return soliton_length_scale(ball) / std::sqrt(2.0);
}

double pair_potential_zero(const BallSpec& ball) {
    if (ball.pointlike())
        throw ZeroRadius("pair_potential_zero: R = 0 (use point_potential)");
    return -1.2 * ball.constants.G * ball.mass * ball.mass / ball.radius;
}

double pair_potential(const BallSpec& ball, double d) {
    if (d < 0.0)
        throw NegativeSeparation("pair_potential: separation must be >= 0");
    if (ball.pointlike())
        throw ZeroRadius("pair_potential: R = 0 (use point_potential)");
    const double gm2 = ball.constants.G * ball.mass * ball.mass;
    const double R = ball.radius;
    if (d >= 2.0 * R) return -gm2 / d;
    // Overlapping uniform spheres: fifth-degree polynomial in u = d/R.
    const double u = d / R;
    const double u2 = u * u;
    const double poly = 1.2 - 0.5 * u2 + (3.0 / 16.0) * u2 * u - (1.0 / 160.0) * u2 * u2 * u;
    return -gm2 / R * poly;
}

PointPotential point_potential(const BallSpec& ball, double d, double softening) {
    if (d < 0.0)
        throw NegativeSeparation("point_potential: separation must be >= 0");
    if (softening < 0.0)
        throw ConfigError("point_potential: softening must be >= 0");
    const double gm2 = ball.constants.G * ball.mass * ball.mass;
    const double s = std::hypot(d, softening);
    if (s == 0.0)
        return {-std::numeric_limits<double>::infinity(), true};
    return {-gm2 / s, false};
}

Kernel Kernel::ball_kernel(const BallSpec& ball) {
    if (ball.pointlike())
        throw ZeroRadius("Kernel::ball_kernel: R = 0 (use point_kernel)");
    Kernel k;
    k.type_ = Type::ball;
    k.g_ = ball.constants.G;
    k.mass_ = ball.mass;
    k.radius_ = ball.radius;
    k.omega_ = gravitational_frequency(ball);
    k.u0_ = pair_potential_zero(ball);
    return k;
}

Kernel Kernel::point_kernel(const BallSpec& ball, double softening) {
    if (softening < 0.0)
        throw ConfigError("Kernel::point_kernel: softening must be >= 0");
    Kernel k;
    k.type_ = Type::point;
    k.g_ = ball.constants.G;
    k.mass_ = ball.mass;
    k.radius_ = ball.radius;
    k.softening_ = softening;
    k.singular_ = (softening == 0.0);
    k.u0_ = k.singular_ ? -std::numeric_limits<double>::infinity()
                        : -k.g_ * k.mass_ * k.mass_ / softening;
    k.omega_ = 0.0;
    return k;
}

Kernel Kernel::harmonic_kernel(double mass, double omega, double u0) {
    if (!(mass > 0.0) || !(omega > 0.0))
        throw ConfigError("Kernel::harmonic_kernel: mass and omega must be > 0");
    Kernel k;
    k.type_ = Type::harmonic;
    k.mass_ = mass;
    k.omega_ = omega;
    k.u0_ = u0;
    return k;
}

Kernel Kernel::zero_kernel() {
    Kernel k;
    k.type_ = Type::zero;
    return k;
}

double Kernel::operator()(double d) const {
    d = std::abs(d);
    switch (type_) {
    case Type::ball: {
        BallSpec b(mass_, radius_, {g_, 1.0});
        return pair_potential(b, d);
    }
    case Type::point: {
        const double s = std::hypot(d, softening_);
        if (s == 0.0) return -std::numeric_limits<double>::infinity();
        return -g_ * mass_ * mass_ / s;
    }
    case Type::harmonic:
        return u0_ + 0.5 * mass_ * omega_ * omega_ * d * d;
    case Type::zero:
        return 0.0;
    }
    return 0.0;
}

KernelTable::KernelTable(const Kernel& kernel, const GridSpec& grid)
    : kernel_(kernel), grid_(grid) {
    const int m = grid.padded_size();
    const double h = grid.spacing();
    padded_.resize(m);
    // Circular layout of offsets: index j holds U(o h) with o = j for
    // j <= m/2 and o = j - m above, so linear convolution of the
    // zero-padded density is exact for all offsets the grid realizes.
    for (int j = 0; j < m; ++j) {
        const int o = (j <= m / 2) ? j : j - m;
        padded_[j] = kernel_(o * h);
    }
    Fft fft(m);
    Eigen::VectorXcd tmp = padded_.cast<std::complex<double>>();
    fft.forward(tmp);
    padded_fft_ = tmp;
}

Eigen::VectorXd KernelTable::mean_field(const Eigen::VectorXd& density) const {
    const int n = grid_.n;
    const int m = grid_.padded_size();
    Eigen::VectorXcd work = Eigen::VectorXcd::Zero(m);
    for (int i = 0; i < n; ++i) work[i] = density[i];
    Fft fft(m);
    fft.forward(work);
    work.array() *= padded_fft_.array();
    fft.inverse(work);
    Eigen::VectorXd out(n);
    const double h = grid_.spacing();
    for (int i = 0; i < n; ++i) out[i] = work[i].real() * h;
    return out;
}

Eigen::VectorXd KernelTable::mean_field_direct(const Eigen::VectorXd& density) const {
    const int n = grid_.n;
    const double h = grid_.spacing();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += kernel_((i - j) * h) * density[j];
        out[i] = acc * h;
    }
    return out;
}

Eigen::MatrixXd KernelTable::pair_matrix() const {
    const int n = grid_.n;
    const double h = grid_.spacing();
    Eigen::MatrixXd u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = kernel_((i - j) * h);
            u(i, j) = v;
            u(j, i) = v;
        }
    return u;
}

KernelTable build_grid_kernel(const Kernel& kernel, const GridSpec& grid) {
    if (kernel.singular())
        throw UnsoftenedPointKernel(
            "build_grid_kernel: point kernel with zero softening cannot be discretized");
    return KernelTable(kernel, grid);
}

} // namespace gravicollapse
