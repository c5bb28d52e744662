#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gravicollapse/decoherence.hpp"
#include "gravicollapse/kernel.hpp"

using namespace gravicollapse;

namespace {
const BallSpec unit_ball(1.0, 1.0, {1.0, 1.0}); // G = M = R = hbar = 1
}

TEST_CASE("distant-superposition limit approaches hbar / (-U(0))") {
    const DecoherenceReport far = decoherence_time(unit_ball, 1e6);
    CHECK(far.t_g == doctest::Approx(1.0 / 1.2).epsilon(1e-5));
    CHECK_FALSE(far.singular);
}

TEST_CASE("contact-separation value from the shell theorem") {
    // U(2) = -1/2, U(0) = -1.2: gap 0.7.
    const DecoherenceReport r = decoherence_time(unit_ball, 2.0);
    CHECK(r.t_g == doctest::Approx(1.0 / 0.7).epsilon(1e-12));
    CHECK(r.rate * r.t_g == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero separation: nothing to decohere") {
    const DecoherenceReport r = decoherence_time(unit_ball, 0.0);
    CHECK(std::isinf(r.t_g));
    CHECK(r.rate == 0.0);
}

TEST_CASE("point-like balls are singular, never silently zero") {
    const BallSpec point(1.0, 0.0, {1.0, 1.0});
    const DecoherenceReport r = decoherence_time(point, 3.0);
    CHECK(r.singular);
    CHECK(r.t_g == 0.0);
    CHECK(std::isinf(r.rate));
    // Softening removes the singularity.
    const DecoherenceReport soft = decoherence_time(point, 3.0, 0.5);
    CHECK_FALSE(soft.singular);
    CHECK(soft.t_g > 0.0);
}

TEST_CASE("monotone decreasing in separation") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> dist(1e-3, 50.0);
    for (int i = 0; i < 200; ++i) {
        double a = dist(gen), b = dist(gen);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(decoherence_time(unit_ball, a).t_g > decoherence_time(unit_ball, b).t_g);
    }
}

TEST_CASE("asymptote within 2 percent beyond 100 R") {
    const double t_inf = 1.0 / 1.2;
    for (double d : {100.0, 250.0, 1e4}) {
        const DecoherenceReport r = decoherence_time(unit_ball, d);
        CHECK(std::abs(r.t_g / t_inf - 1.0) < 0.02);
    }
}

TEST_CASE("regime labels follow the physical time scale") {
    // Atomic-scale mass: enormous t_G.
    const BallSpec atom(1e-22, 1e-8, PhysicalConstants::codata());
    const DecoherenceReport slow = decoherence_time(atom, 1e-4);
    CHECK(slow.t_g > 1e10);
    CHECK(to_string(slow.regime) == "atomic");
    // Macroscopic ball: unrealistically short.
    const BallSpec rock = BallSpec::from_density(1.0, 1.0);
    const DecoherenceReport fast = decoherence_time(rock, 1e3);
    CHECK(fast.t_g < 1e-3);
    CHECK(to_string(fast.regime) == "macro");
}
