#include "gravicollapse/wavefunction.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "gravicollapse/errors.hpp"

namespace gravicollapse {

void WaveFunction::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0))
        throw NumericalError("WaveFunction::normalize: zero or non-finite norm");
    amp /= std::sqrt(n2);
}

double WaveFunction::aligned_distance(const WaveFunction& other) const {
    const double h = grid.spacing();
    const std::complex<double> overlap = (other.amp.adjoint() * amp)[0] * h;
    const double a2 = norm_squared();
    const double b2 = other.norm_squared();
    const double d2 = a2 + b2 - 2.0 * std::abs(overlap);
    return std::sqrt(std::max(0.0, d2));
}

void WaveFunction::save_csv(const std::string& path, double t) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "# t=" << t << "\n";
    out << "x,re_psi,im_psi,abs2_psi\n";
    out.precision(17);
    for (int i = 0; i < grid.n; ++i)
        out << grid.x(i) << ',' << amp[i].real() << ',' << amp[i].imag() << ','
            << std::norm(amp[i]) << '\n';
}

void WaveFunction::save_binary(const std::string& path, double t) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    const std::uint64_t n = static_cast<std::uint64_t>(grid.n);
    const double L = grid.length;
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&L), sizeof L);
    out.write(reinterpret_cast<const char*>(&t), sizeof t);
    for (int i = 0; i < grid.n; ++i) {
        const double re = amp[i].real(), im = amp[i].imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    if (!out) throw IoError("write failed: " + path);
}

WaveFunction WaveFunction::load_binary(const std::string& path, double* t_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t n = 0;
    double L = 0.0, t = 0.0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&L), sizeof L);
    in.read(reinterpret_cast<char*>(&t), sizeof t);
    WaveFunction wf(GridSpec(static_cast<int>(n), L));
    for (int i = 0; i < wf.grid.n; ++i) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        wf.amp[i] = {re, im};
    }
    if (!in) throw IoError("truncated state file: " + path);
    if (t_out) *t_out = t;
    return wf;
}

namespace {
void check_packet(const GridSpec& grid, double center, double width) {
    if (!(width > 2.0 * grid.spacing()))
        throw UnresolvedWidth("packet width must exceed 2 grid spacings");
    if (std::abs(center) + 6.0 * width > 0.5 * grid.length)
        throw UnresolvedWidth("packet support (center +- 6 width) leaves the domain");
}
} // namespace

WaveFunction gaussian_packet(const GridSpec& grid, double center, double width,
                             double momentum, double hbar) {
    check_packet(grid, center, width);
    WaveFunction wf(grid);
    const double k = momentum / hbar;
    for (int i = 0; i < grid.n; ++i) {
        const double u = grid.x(i) - center;
        wf.amp[i] = std::exp(std::complex<double>(-u * u / (4.0 * width * width),
                                                  k * grid.x(i)));
    }
    wf.normalize();
    return wf;
}

WaveFunction gaussian_packet_complex(const GridSpec& grid, double center, double width,
                                     std::complex<double> width_factor) {
    check_packet(grid, center, width);
    if (!(width_factor.real() > 0.0))
        throw UnresolvedWidth("complex width factor must have positive real part");
    WaveFunction wf(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double u = grid.x(i) - center;
        wf.amp[i] = std::exp(-width_factor * (u * u / (4.0 * width * width)));
    }
    wf.normalize();
    return wf;
}

WaveFunction cat_state(const GridSpec& grid, double separation, double width,
                       double momentum, double hbar) {
    WaveFunction left = gaussian_packet(grid, -0.5 * separation, width, momentum, hbar);
    WaveFunction right = gaussian_packet(grid, 0.5 * separation, width, momentum, hbar);
    WaveFunction wf(grid);
    wf.amp = left.amp + right.amp;
    wf.normalize();
    return wf;
}

} // namespace gravicollapse
