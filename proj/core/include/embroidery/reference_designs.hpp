#pragma once

#include <vector>

#include "embroidery/actuator.hpp"
#include "embroidery/calibration.hpp"

namespace embroidery {

/// Prototype actuator with its fitted effective modulus and onset pressure.
struct ReferenceDesign {
    EmbroideryDesign design;
    Pressure shear_modulus;
    Pressure transition_pressure;
};

/// Predicted transition pressures of the three zigzag widths
/// (5 / 7 / 9 mm -> 25 / 85 / 180 kPa); the tube fit targets these.
std::vector<TransitionTarget> reference_transition_targets();

/// Zigzag prototypes, w = 5 / 7 / 9 mm, l0 = 100 mm, stitch 1.0 mm.
std::vector<ReferenceDesign> zigzag_reference_designs();

/// Cross prototypes, w = 7 mm, alpha0 = 15 / 30 / 45 / 60 deg, stitch 1.4 mm.
std::vector<ReferenceDesign> cross_reference_designs();

/// Default tube (l0 = 100 mm, d_f = 0.5 mm) with (r_f, G_e) fitted to
/// reference_transition_targets(). Computed once, thread-safe.
const TubeMaterial& reference_tube();

ActuatorModel reference_model(const ReferenceDesign& design, const TubeMaterial& tube = reference_tube(),
                              BraidingMode mode = BraidingMode::Geometric);

} // namespace embroidery
