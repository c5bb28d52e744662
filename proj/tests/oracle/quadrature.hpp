#pragma once

// Independent quadrature oracle for the rigid-ball pair potential. Reduces
// the double volume integral to a single radial integral by spherical
// symmetry: with Phi the exact potential of one ball,
//   U(d) = (3M/R^3) * Int_0^{d+R} Phi(s) s^2 F(s|d) ds,
// where F is the solid-angle fraction of the sphere of radius s (about one
// center) lying inside the other ball. The integrand is piecewise smooth;
// each piece gets Gauss-Legendre. Used to validate the closed form, never
// the other way round.

#include <cmath>
#include <vector>

namespace oracle {

struct GaussLegendre {
    std::vector<double> x, w; // nodes and weights on [-1, 1]
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            // Newton iteration from the Chebyshev initial guess.
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
        return acc * half;
    }
};

// Exact potential of a uniform ball of mass M, radius R at distance s from
// its center (G factored in).
inline double ball_potential(double G, double M, double R, double s) {
    if (s >= R) return -G * M / s;
    return -G * M * (3.0 * R * R - s * s) / (2.0 * R * R * R);
}

// Solid-angle fraction of the sphere of radius s about the origin inside a
// ball of radius R centered at distance d.
inline double cap_fraction(double s, double d, double R) {
    if (d == 0.0) return s <= R ? 1.0 : 0.0;
    if (s <= 0.0) return d < R ? 1.0 : 0.0;
    if (s >= d + R) return 0.0;
    if (s <= R - d) return 1.0; // fully inside (d < R)
    if (s <= d - R) return 0.0; // fully outside (d > R)
    const double c = (s * s + d * d - R * R) / (2.0 * s * d);
    return 0.5 * (1.0 - std::min(1.0, std::max(-1.0, c)));
}

inline double pair_potential_quadrature(double G, double M, double R, double d) {
    static const GaussLegendre gl(64);
    // Breakpoints where the integrand changes branch.
    std::vector<double> pts = {0.0, std::abs(d - R), R, d + R};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (b <= a) continue;
        acc += gl.integrate(
            [&](double s) {
                return ball_potential(G, M, R, s) * s * s * cap_fraction(s, d, R);
            },
            a, b);
    }
    return 3.0 * M / (R * R * R) * acc;
}

} // namespace oracle
