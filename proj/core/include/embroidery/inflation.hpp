#pragma once

#include "embroidery/actuator.hpp"

namespace embroidery {

/// Neo-Hookean free inflation of the tube with no axial stretch:
/// P = G_e / 2 * (r^2 / r_f^2 + r_f^2 / r^2 - 2). Requires r >= r_f.
Pressure inflation_pressure(Length radius, const TubeMaterial& tube);

/// Unique r >= r_f with inflation_pressure(r) == P (bisection, 1e-12 m).
Length radius_at_pressure(Pressure pressure, const TubeMaterial& tube);

struct Transition {
    Pressure pressure; // P0
    Length radius;     // r0
};

/// Pressure at which the tube fills the sleeve. Zero if the sleeve is
/// already filled at rest (r0 <= r_f).
Transition transition_pressure(const TubeMaterial& tube, const EmbroideryDesign& design);

} // namespace embroidery
