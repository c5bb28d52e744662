#include "gravicollapse/decoherence.hpp"

#include <cmath>
#include <limits>

#include "gravicollapse/kernel.hpp"

namespace gravicollapse {

namespace {
DecoherenceRegime classify(double t_g_seconds) {
    if (t_g_seconds > 1.0) return DecoherenceRegime::atomic;
    if (t_g_seconds >= 1e-3) return DecoherenceRegime::nano;
    return DecoherenceRegime::macro;
}
} // namespace

DecoherenceReport decoherence_time(const BallSpec& ball, double d, double softening,
                                   double seconds_per_time_unit) {
    if (d < 0.0)
        throw NegativeSeparation("decoherence_time: separation must be >= 0");
    const double hbar = ball.constants.hbar;
    DecoherenceReport rep{};
    rep.separation = d;
    rep.singular = ball.pointlike() && softening == 0.0;
    if (rep.singular) {
        // U(0) = -inf for an unsoftened point: decoherence would be
        // instantaneous. Reported, never silently returned as a plain zero.
        rep.t_g = 0.0;
        rep.rate = std::numeric_limits<double>::infinity();
        rep.regime = DecoherenceRegime::macro;
        return rep;
    }
    double gap; // U(d) - U(0) >= 0
    if (ball.pointlike() || softening > 0.0) {
        const double u_d = point_potential(ball, d, softening).value;
        const double u_0 = point_potential(ball, 0.0, softening).value;
        gap = u_d - u_0;
    } else {
        gap = pair_potential(ball, d) - pair_potential_zero(ball);
    }
    if (gap <= 0.0) {
        // d = 0: no superposition to decohere.
        rep.t_g = std::numeric_limits<double>::infinity();
        rep.rate = 0.0;
        rep.regime = DecoherenceRegime::atomic;
        return rep;
    }
    rep.t_g = hbar / gap;
    rep.rate = gap / hbar;
    rep.regime = classify(rep.t_g * seconds_per_time_unit);
    return rep;
}

std::string to_string(DecoherenceRegime regime) {
    switch (regime) {
    case DecoherenceRegime::atomic: return "atomic";
    case DecoherenceRegime::nano: return "nano";
    case DecoherenceRegime::macro: return "macro";
    }
    return "?";
}

} // namespace gravicollapse
