#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gravicollapse/kernel.hpp"
#include "oracle/quadrature.hpp"

using namespace gravicollapse;

namespace {
const BallSpec unit_ball(1.0, 1.0, {1.0, 1.0}); // G = M = R = 1
}

TEST_CASE("closed form matches the quadrature oracle over [0, 4R]") {
    for (int i = 0; i < 50; ++i) {
        const double d = 4.0 * i / 49.0;
        const double closed = pair_potential(unit_ball, d);
        const double quad = oracle::pair_potential_quadrature(1.0, 1.0, 1.0, d);
        CHECK(std::abs(closed - quad) / std::abs(quad) < 1e-6);
    }
    // Same check off unit scales.
    const BallSpec b(3.0, 0.7, {2.5, 1.0});
    for (int i = 0; i < 12; ++i) {
        const double d = 4.0 * 0.7 * i / 11.0;
        const double closed = pair_potential(b, d);
        const double quad = oracle::pair_potential_quadrature(2.5, 3.0, 0.7, d);
        CHECK(std::abs(closed - quad) / std::abs(quad) < 1e-6);
    }
}

TEST_CASE("full-overlap depth and far field") {
    CHECK(pair_potential(unit_ball, 0.0) == doctest::Approx(-1.2).epsilon(1e-14));
    CHECK(pair_potential_zero(unit_ball) == doctest::Approx(-1.2).epsilon(1e-14));
    // Oracle agrees at full overlap.
    CHECK(oracle::pair_potential_quadrature(1.0, 1.0, 1.0, 0.0) ==
          doctest::Approx(-1.2).epsilon(1e-12));
    // Shell theorem: exactly -G M^2 / d beyond contact.
    CHECK(pair_potential(unit_ball, 2.5) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(pair_potential(unit_ball, 10.0) == doctest::Approx(-0.1).epsilon(1e-15));
    for (double d : {2.0, 3.7, 55.0})
        CHECK(std::abs(pair_potential(unit_ball, d) + 1.0 / d) < 1e-12);
}

TEST_CASE("continuity and first derivative at contact") {
    const double d0 = 2.0;
    const double left = pair_potential(unit_ball, d0 - 1e-12);
    const double right = pair_potential(unit_ball, d0 + 1e-12);
    CHECK(std::abs(left - right) < 1e-9);
    // One-sided derivatives via Richardson on each branch.
    auto deriv = [&](double x, double sign) {
        const double h1 = 1e-5, h2 = 5e-6;
        const double g1 = (pair_potential(unit_ball, x + sign * h1) -
                           pair_potential(unit_ball, x)) / (sign * h1);
        const double g2 = (pair_potential(unit_ball, x + sign * h2) -
                           pair_potential(unit_ball, x)) / (sign * h2);
        return 2.0 * g2 - g1;
    };
    const double dl = deriv(d0, -1.0);
    const double dr = deriv(d0, +1.0);
    CHECK(std::abs(dl - dr) < 1e-9);
    CHECK(dl == doctest::Approx(0.25).epsilon(1e-5)); // G M^2 / (2R)^2
}

TEST_CASE("monotone increasing in separation") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(0.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        double a = dist(gen), b = dist(gen);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(pair_potential(unit_ball, a) < pair_potential(unit_ball, b));
    }
}

TEST_CASE("small-separation curvature equals G M^2 / R^3") {
    // Least squares in the scaled variable s = d / d_max with basis
    // {s^2, s^3}; the d^2 coefficient recovers half the curvature.
    const double d_max = 0.05;
    const int npts = 25;
    Eigen::MatrixXd A(npts, 2);
    Eigen::VectorXd y(npts);
    for (int i = 0; i < npts; ++i) {
        const double s = static_cast<double>(i + 1) / npts;
        const double d = s * d_max;
        A(i, 0) = s * s;
        A(i, 1) = s * s * s;
        y(i) = pair_potential(unit_ball, d) - pair_potential(unit_ball, 0.0);
    }
    Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    const double curvature = 2.0 * coef[0] / (d_max * d_max);
    CHECK(std::abs(curvature - 1.0) < 1e-4);
}

TEST_CASE("point potential and its singularity flag") {
    CHECK(point_potential(unit_ball, 1.0, 0.0).value == doctest::Approx(-1.0));
    CHECK_FALSE(point_potential(unit_ball, 1.0, 0.0).singular);
    const PointPotential origin = point_potential(unit_ball, 0.0, 0.0);
    CHECK(origin.singular);
    CHECK(std::isinf(origin.value));
    CHECK(point_potential(unit_ball, 0.0, 1.0).value == doctest::Approx(-1.0));
}

TEST_CASE("gravitational frequency") {
    CHECK(gravitational_frequency(unit_ball) == doctest::Approx(1.0));
    // Scale invariance at fixed density: (8M, 2R) leaves omega unchanged.
    const BallSpec big(8.0, 2.0, {1.0, 1.0});
    CHECK(gravitational_frequency(big) == doctest::Approx(1.0).epsilon(1e-14));
    // CGS, unit density: omega = sqrt(4 pi G rho / 3).
    const BallSpec cgs = BallSpec::from_density(1.0, 0.37);
    const double expected =
        std::sqrt(4.0 * M_PI * PhysicalConstants::codata_G / 3.0);
    CHECK(gravitational_frequency(cgs) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(5.2872e-4).epsilon(1e-3));
    CHECK_THROWS_AS(gravitational_frequency(BallSpec(1.0, 0.0, {1.0, 1.0})),
                    ZeroRadius);
}

TEST_CASE("grid kernel tables") {
    SUBCASE("huge ball over a small domain is harmonic") {
        const BallSpec fat(1.0, 100.0, {1.0, 1.0});
        const GridSpec grid(16, 1.0);
        KernelTable table = build_grid_kernel(Kernel::ball_kernel(fat), grid);
        const double omega2 = 1.0 / (100.0 * 100.0 * 100.0);
        for (int j = 0; j < grid.padded_size(); ++j) {
            const int o = (j <= grid.padded_size() / 2) ? j : j - grid.padded_size();
            const double d = o * grid.spacing();
            const double expect = table.u0() + 0.5 * omega2 * d * d;
            CHECK(std::abs(table.padded_samples()[j] - expect) <
                  1e-6 * std::abs(table.u0()));
        }
    }
    SUBCASE("symmetric under offset reversal and exact far field") {
        const GridSpec grid(64, 32.0);
        KernelTable table = build_grid_kernel(Kernel::ball_kernel(unit_ball), grid);
        const auto& k = table.padded_samples();
        const int m = grid.padded_size();
        for (int j = 1; j < m / 2; ++j)
            CHECK(k[j] == doctest::Approx(k[m - j]).epsilon(1e-15));
        for (int j = 5; j < m / 2; ++j) { // offsets beyond 2R = 2 (h = 0.5)
            const double d = j * grid.spacing();
            CHECK(std::abs(k[j] + 1.0 / d) < 1e-12);
        }
    }
    SUBCASE("unsoftened point kernel is rejected") {
        const BallSpec point(1.0, 0.0, {1.0, 1.0});
        CHECK_THROWS_AS(
            build_grid_kernel(Kernel::point_kernel(point, 0.0), GridSpec(16, 1.0)),
            UnsoftenedPointKernel);
    }
}

TEST_CASE("minus the pair matrix is positive semidefinite") {
    const GridSpec grid(64, 24.0);
    for (const Kernel& k :
         {Kernel::ball_kernel(unit_ball),
          Kernel::point_kernel(BallSpec(1.0, 0.0, {1.0, 1.0}), 0.5)}) {
        KernelTable table(k, grid);
        Eigen::MatrixXd c = -table.pair_matrix();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
        const double lmax = es.eigenvalues().maxCoeff();
        CHECK(es.eigenvalues().minCoeff() > -1e-10 * lmax);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(pair_potential(unit_ball, -0.1), NegativeSeparation);
    CHECK_THROWS_AS(pair_potential(BallSpec(1.0, 0.0, {1.0, 1.0}), 1.0), ZeroRadius);
    CHECK_THROWS_AS(point_potential(unit_ball, -1.0, 0.0), NegativeSeparation);
}
