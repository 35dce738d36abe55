#include "embroidery/reference_designs.hpp"

namespace embroidery {

using namespace embroidery::literals;

std::vector<TransitionTarget> reference_transition_targets() {
    return {{5_mm, 25_kPa}, {7_mm, 85_kPa}, {9_mm, 180_kPa}};
}

std::vector<ReferenceDesign> zigzag_reference_designs() {
    return {
        {EmbroideryDesign::zigzag(5_mm), 0.8_MPa, 50_kPa},
        {EmbroideryDesign::zigzag(7_mm), 2.7_MPa, 85_kPa},
        {EmbroideryDesign::zigzag(9_mm), 3.4_MPa, 180_kPa},
    };
}

std::vector<ReferenceDesign> cross_reference_designs() {
    return {
        {EmbroideryDesign::cross(7_mm, 15_deg), 2.9_MPa, 150_kPa},
        {EmbroideryDesign::cross(7_mm, 30_deg), 12.0_MPa, 160_kPa},
        {EmbroideryDesign::cross(7_mm, 45_deg), 1.3_MPa, 170_kPa},
        {EmbroideryDesign::cross(7_mm, 60_deg), 2.9_MPa, 200_kPa},
    };
}

const TubeMaterial& reference_tube() {
    static const TubeMaterial tube = [] {
        TubeMaterial base;
        const TubeFitResult fit = fit_tube_geometry(reference_transition_targets(), base);
        base.outer_radius = fit.outer_radius;
        base.rubber_shear_modulus = fit.rubber_modulus;
        base.source = TubeSource::FittedToTransition;
        return base;
    }();
    return tube;
}

ActuatorModel reference_model(const ReferenceDesign& design, const TubeMaterial& tube, BraidingMode mode) {
    ModelOptions opts;
    opts.braiding_mode = mode;
    opts.has_transition_pressure = true;
    opts.transition_pressure = design.transition_pressure;
    return make_actuator_model(tube, design.design, design.shear_modulus, opts);
}

} // namespace embroidery
