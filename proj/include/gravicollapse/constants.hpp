#pragma once

#include "gravicollapse/errors.hpp"

namespace gravicollapse {

// Fundamental constants in CGS units. Overridable for internal-unit runs
// (set G = hbar = 1) and for testing.
struct PhysicalConstants {
    double G;    // gravitational constant, cm^3 g^-1 s^-2
    double hbar; // reduced Planck constant, erg s

    static constexpr double codata_G = 6.67430e-8;
    static constexpr double codata_hbar = 1.054571817e-27;

    static PhysicalConstants codata() { return {codata_G, codata_hbar}; }
    static PhysicalConstants natural() { return {1.0, 1.0}; }

    void validate() const {
        if (!(G > 0.0) || !(hbar > 0.0))
            throw ConfigError("PhysicalConstants: G and hbar must be strictly positive");
    }
};

} // namespace gravicollapse
