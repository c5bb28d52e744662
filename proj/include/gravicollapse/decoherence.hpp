#pragma once

#include <string>

#include "gravicollapse/ball.hpp"

namespace gravicollapse {

// Qualitative label for the magnitude of t_G, judged against 1 s and
// 1e-3 s in physical units. Informational only; enters no computation.
enum class DecoherenceRegime { atomic, nano, macro };

struct DecoherenceReport {
    double separation; // d
    double t_g;        // hbar / (U(d) - U(0)); +inf at d = 0, 0 when singular
    double rate;       // 1 / t_g
    DecoherenceRegime regime;
    bool singular;     // R = 0 with no softening: U(0) = -inf, t_g = 0
};

// Decoherence time of a superposition at center separation d. Degenerate
// cases come back as sentinel values with flags, never as exceptions, so
// sweeps across R -> 0 complete and can plot the divergence.
// `seconds_per_time_unit` converts t_g to seconds for the regime label
// (1.0 when the ball is already in CGS).
DecoherenceReport decoherence_time(const BallSpec& ball, double d,
                                   double softening = 0.0,
                                   double seconds_per_time_unit = 1.0);

std::string to_string(DecoherenceRegime regime);

} // namespace gravicollapse
