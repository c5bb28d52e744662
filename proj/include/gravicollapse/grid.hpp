#pragma once

#include <cmath>

#include "gravicollapse/errors.hpp"

namespace gravicollapse {

// Uniform 1-D grid centered at 0: x_i = (i - n/2) h, h = L/n. n must be a
// power of two >= 16. The padding factor sizes the buffer used for
// aperiodic (zero-padded) convolution with the long-ranged kernel.
struct GridSpec {
    int n = 0;
    double length = 0.0;
    int padding = 2;

    GridSpec() = default;
    GridSpec(int n_, double length_, int padding_ = 2)
        : n(n_), length(length_), padding(padding_) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw BadDimensions("GridSpec: n must be a power of two >= 16");
        if (!(length > 0.0))
            throw BadDimensions("GridSpec: length must be > 0");
        if (padding < 2)
            throw BadDimensions("GridSpec: padding factor must be >= 2");
    }

    double spacing() const { return length / n; }
    double x(int i) const { return (i - n / 2) * spacing(); }
    // FFT-ordered wavenumber: k_j = 2 pi j / L, negative branch on the
    // upper half.
    double wavenumber(int j) const {
        const int m = (j < n / 2) ? j : j - n;
        return 2.0 * M_PI * m / length;
    }
    int padded_size() const { return padding * n; }

    bool operator==(const GridSpec& o) const {
        return n == o.n && length == o.length && padding == o.padding;
    }
};

inline GridSpec make_grid(int n, double length, int padding = 2) {
    return GridSpec(n, length, padding);
}

} // namespace gravicollapse
