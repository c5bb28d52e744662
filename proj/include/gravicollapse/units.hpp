#pragma once

#include <string>

#include "gravicollapse/ball.hpp"

namespace gravicollapse {

// Which quantity is scaled to 1 besides hbar and M.
//   harmonic: hbar = M = omega_G = 1 (quadratic-regime runs)
//   ball:     hbar = M = R = 1, G carried explicitly (full-kernel runs)
enum class ScalingMode { harmonic, ball };

// Conversion between CGS and the internal unit system. Each *_unit field is
// the CGS value of one internal unit. Immutable after construction.
struct UnitSystem {
    ScalingMode mode;
    double length_unit; // cm per internal length
    double time_unit;   // s per internal time
    double mass_unit;   // g per internal mass
    double energy_unit; // erg per internal energy
    double internal_G;  // G expressed in internal units

    double to_internal_length(double cm) const { return cm / length_unit; }
    double to_internal_time(double s) const { return s / time_unit; }
    double to_internal_mass(double g) const { return g / mass_unit; }
    double to_internal_energy(double erg) const { return erg / energy_unit; }
    double to_cgs_length(double x) const { return x * length_unit; }
    double to_cgs_time(double t) const { return t * time_unit; }
    double to_cgs_mass(double m) const { return m * mass_unit; }
    double to_cgs_energy(double e) const { return e * energy_unit; }

    // The same ball expressed in internal units (hbar = M = 1).
    BallSpec internal_ball(const BallSpec& physical) const {
        return BallSpec(physical.mass / mass_unit, physical.radius / length_unit,
                        {internal_G, 1.0});
    }
};

UnitSystem make_unit_system(const BallSpec& ball, ScalingMode mode);

std::string to_string(ScalingMode mode);
ScalingMode scaling_mode_from_string(const std::string& s);

} // namespace gravicollapse
