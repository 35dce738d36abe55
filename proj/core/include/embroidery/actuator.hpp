#pragma once

#include <string_view>

#include "embroidery/units.hpp"

namespace embroidery {

enum class TubeSource {
    Placeholder,        // built-in defaults, not measured
    FittedToTransition, // (r_f, G_e) fitted to reference transition pressures
    UserSupplied,
};

/// Rest geometry and rubber modulus of the inflatable tube.
struct TubeMaterial {
    Length rest_length{millimeters(100.0)};       // l0
    Length outer_radius{millimeters(1.0)};        // r_f
    Length inner_radius{millimeters(0.5)};        // d_f
    Pressure rubber_shear_modulus{megapascals(0.6)}; // G_e
    TubeSource source{TubeSource::Placeholder};

    /// Throws std::invalid_argument unless 0 < d_f < r_f, l0 > 0, G_e > 0.
    void validate() const;

    /// r_f^2 - d_f^2; conserved (scaled by the mean axial stretch) by the
    /// incompressible wall.
    [[nodiscard]] double wall_area_factor() const noexcept {
        const double rf = outer_radius.value();
        const double df = inner_radius.value();
        return rf * rf - df * df;
    }
};

enum class Pattern { Zigzag, Cross };

struct EmbroideryDesign {
    Pattern pattern{Pattern::Zigzag};
    Length width{millimeters(7.0)};
    Angle angle{};                             // embroidery angle, cross only
    Length stitch_interval{millimeters(1.0)}; // metadata
    int orientation_sign{-1};

    void validate() const;

    static EmbroideryDesign zigzag(Length width, Length stitch_interval = millimeters(1.0));
    static EmbroideryDesign cross(Length width, Angle angle, Length stitch_interval = millimeters(1.4));
};

/// How the reference braiding angle of a cross pattern is computed from
/// (w, alpha0, r_f).
///
/// Geometric: sin(beta0) = (w/2) tan(alpha0) / sqrt(4 r_f^2 + w^2/4 + (w^2/4) tan^2(alpha0)),
///   i.e. axial advance of one thread leg over its length, the leg running
///   along a triangle side of length sqrt((w/2)^2 + (2 r_f)^2). Unit-free.
/// VerbatimMm: sin(beta0) = w tan(alpha0) / (4 r_f^2 + w^2/4 + (w^2/4) tan^2(alpha0))
///   with every length in millimetres (the expression is not dimensionless).
/// SqrtCorrected: as VerbatimMm but with a square root over the denominator.
enum class BraidingMode { Geometric, VerbatimMm, SqrtCorrected };

enum class TransitionSource { Derived, Given };

/// Calibrated runtime model of one actuator. Build through make_actuator_model.
struct ActuatorModel {
    TubeMaterial tube;
    EmbroideryDesign design;
    Pressure shear_modulus{};        // G, effective modulus of tube + sleeve
    Length sleeve_radius{};          // r0
    Pressure transition_pressure{};  // P0
    Angle braiding_angle0{};         // beta0, cross only
    BraidingMode braiding_mode{BraidingMode::Geometric};
    TransitionSource transition_source{TransitionSource::Derived};

    void validate() const;
};

struct ModelOptions {
    BraidingMode braiding_mode{BraidingMode::Geometric};
    /// Overrides the transition pressure derived from the inflation law.
    bool has_transition_pressure{false};
    Pressure transition_pressure{};
};

/// r0 is always derived from the sleeve triangle; P0 from the inflation law
/// unless options carries a fitted value.
ActuatorModel make_actuator_model(const TubeMaterial& tube, const EmbroideryDesign& design,
                                  Pressure shear_modulus, const ModelOptions& options = {});

/// Radius of the circle whose circumference equals the perimeter of the
/// isosceles sleeve triangle (base w, height 2 r_f):
///   r0 = (2 sqrt((w/2)^2 + (2 r_f)^2) + w) / (2 pi).
Length sleeve_radius(Length width, Length tube_outer_radius);

Angle braiding_angle0(Length width, Angle angle, Length tube_outer_radius,
                      BraidingMode mode = BraidingMode::Geometric);

/// Inner radius of the deformed wall from incompressibility:
/// d = sqrt(r^2 - (r_f^2 - d_f^2) / lambda_m), lambda_m = (l + l0) / (2 l0).
Length inner_radius(Length outer_radius, Length length, const TubeMaterial& tube);

/// V_i = ((l + l0) / 2) * pi * d^2
Volume internal_volume(Length length, Length inner, Length rest_length);

std::string_view to_string(Pattern p);
std::string_view to_string(BraidingMode m);
std::string_view to_string(TubeSource s);
std::string_view to_string(TransitionSource s);
Pattern parse_pattern(std::string_view s);
BraidingMode parse_braiding_mode(std::string_view s);

} // namespace embroidery
