#pragma once

#include <cmath>

#include "gravicollapse/constants.hpp"
#include "gravicollapse/errors.hpp"

namespace gravicollapse {

// A homogeneous rigid ball of mass M and radius R, together with the
// constants it gravitates with. R = 0 is permitted and means point-like;
// code that cannot handle the point limit must check pointlike().
struct BallSpec {
    double mass = 1.0;   // M
    double radius = 1.0; // R; 0 = point-like
    PhysicalConstants constants = PhysicalConstants::natural();

    BallSpec() = default;
    BallSpec(double m, double r, PhysicalConstants c = PhysicalConstants::natural())
        : mass(m), radius(r), constants(c) {
        constants.validate();
        if (!(mass > 0.0))
            throw ConfigError("BallSpec: mass must be > 0");
        if (!(radius >= 0.0))
            throw ConfigError("BallSpec: radius must be >= 0");
    }

    static BallSpec from_density(double density, double r,
                                 PhysicalConstants c = PhysicalConstants::codata()) {
        if (!(density > 0.0))
            throw ConfigError("BallSpec: density must be > 0");
        const double m = 4.0 * M_PI / 3.0 * density * r * r * r;
        return BallSpec(m, r, c);
    }

    bool pointlike() const { return radius == 0.0; }
    double density() const {
        return mass / (4.0 * M_PI / 3.0 * radius * radius * radius);
    }
};

} // namespace gravicollapse
