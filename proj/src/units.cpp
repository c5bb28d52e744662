#include "gravicollapse/units.hpp"

#include <cmath>

#include "gravicollapse/kernel.hpp"

namespace gravicollapse {

UnitSystem make_unit_system(const BallSpec& ball, ScalingMode mode) {
    UnitSystem u{};
    u.mode = mode;
    u.mass_unit = ball.mass;
    const double hbar = ball.constants.hbar;
    const double G = ball.constants.G;
    if (mode == ScalingMode::harmonic) {
        if (ball.pointlike())
            throw ZeroRadius("make_unit_system: omega_G scaling undefined for R = 0");
        const double omega = gravitational_frequency(ball);
        u.time_unit = 1.0 / omega;
        // hbar = 1 fixes the energy unit; the length unit follows from
        // E = M L^2 / T^2 and equals the oscillator length sqrt(hbar/(M omega)).
        u.energy_unit = hbar / u.time_unit;
        u.length_unit = std::sqrt(u.energy_unit * u.time_unit * u.time_unit / u.mass_unit);
    } else {
        if (ball.pointlike())
            throw ConfigError("make_unit_system: ball scaling needs R > 0 for the length unit");
        u.length_unit = ball.radius;
        u.time_unit = u.mass_unit * u.length_unit * u.length_unit / hbar;
        u.energy_unit = u.mass_unit * u.length_unit * u.length_unit / (u.time_unit * u.time_unit);
    }
    u.internal_G = G * u.mass_unit * u.time_unit * u.time_unit /
                   (u.length_unit * u.length_unit * u.length_unit);
    return u;
}

std::string to_string(ScalingMode mode) {
    return mode == ScalingMode::harmonic ? "harmonic" : "ball";
}

ScalingMode scaling_mode_from_string(const std::string& s) {
    if (s == "harmonic") return ScalingMode::harmonic;
    if (s == "ball") return ScalingMode::ball;
    throw ParseError("unknown scaling mode: " + s);
}

} // namespace gravicollapse
