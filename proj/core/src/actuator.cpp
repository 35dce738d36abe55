#include "embroidery/actuator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "embroidery/errors.hpp"
#include "embroidery/inflation.hpp"

namespace embroidery {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw std::invalid_argument(what); }

std::string fmt_value(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

void TubeMaterial::validate() const {
    if (!(rest_length.value() > 0.0)) invalid("tube: rest length l0 must be > 0");
    if (!(inner_radius.value() > 0.0)) invalid("tube: inner radius d_f must be > 0");
    if (!(inner_radius < outer_radius))
        invalid("tube: inner radius d_f must be smaller than outer radius r_f");
    if (!(rubber_shear_modulus.value() > 0.0)) invalid("tube: rubber shear modulus G_e must be > 0");
}

void EmbroideryDesign::validate() const {
    if (!(width.value() > 0.0)) invalid("design: embroidery width w must be > 0");
    if (pattern == Pattern::Cross) {
        const double a = angle.value();
        if (!(a > 0.0 && a < std::numbers::pi / 2.0))
            invalid("design: cross embroidery angle must lie in (0, 90) deg");
    }
    if (orientation_sign != 1 && orientation_sign != -1)
        invalid("design: orientation_sign must be +1 or -1");
}

EmbroideryDesign EmbroideryDesign::zigzag(Length width, Length stitch_interval) {
    EmbroideryDesign d;
    d.pattern = Pattern::Zigzag;
    d.width = width;
    d.stitch_interval = stitch_interval;
    return d;
}

EmbroideryDesign EmbroideryDesign::cross(Length width, Angle angle, Length stitch_interval) {
    EmbroideryDesign d;
    d.pattern = Pattern::Cross;
    d.width = width;
    d.angle = angle;
    d.stitch_interval = stitch_interval;
    return d;
}

void ActuatorModel::validate() const {
    tube.validate();
    design.validate();
    if (!(shear_modulus.value() > 0.0)) invalid("model: shear modulus G must be > 0");
    if (!(sleeve_radius.value() > 0.0)) invalid("model: sleeve radius r0 must be > 0");
    if (!(transition_pressure.value() >= 0.0)) invalid("model: transition pressure P0 must be >= 0");
    if (design.pattern == Pattern::Cross) {
        const double b = braiding_angle0.value();
        if (!(b > 0.0 && b < std::numbers::pi / 2.0))
            invalid("model: braiding angle beta0 must lie in (0, 90) deg");
    }
}

ActuatorModel make_actuator_model(const TubeMaterial& tube, const EmbroideryDesign& design,
                                  Pressure shear_modulus, const ModelOptions& options) {
    tube.validate();
    design.validate();

    ActuatorModel m;
    m.tube = tube;
    m.design = design;
    m.shear_modulus = shear_modulus;
    m.braiding_mode = options.braiding_mode;

    const Transition tr = transition_pressure(tube, design);
    m.sleeve_radius = tr.radius;
    if (options.has_transition_pressure) {
        m.transition_pressure = options.transition_pressure;
        m.transition_source = TransitionSource::Given;
    } else {
        m.transition_pressure = tr.pressure;
        m.transition_source = TransitionSource::Derived;
    }
    if (design.pattern == Pattern::Cross)
        m.braiding_angle0 = braiding_angle0(design.width, design.angle, tube.outer_radius,
                                            options.braiding_mode);
    m.validate();
    return m;
}

Length sleeve_radius(Length width, Length tube_outer_radius) {
    const double w = width.value();
    const double rf = tube_outer_radius.value();
    if (w < 0.0 || rf < 0.0)
        throw DomainError("sleeve_radius: width and tube radius must be nonnegative");
    const double height = 2.0 * rf;
    const double leg = std::hypot(0.5 * w, height);
    return Length{(2.0 * leg + w) / (2.0 * std::numbers::pi)};
}

Angle braiding_angle0(Length width, Angle angle, Length tube_outer_radius, BraidingMode mode) {
    const double a = angle.value();
    if (!(a > 0.0 && a < std::numbers::pi / 2.0))
        throw DomainError("braiding_angle0: embroidery angle must lie in (0, 90) deg");
    if (!(width.value() > 0.0 && tube_outer_radius.value() > 0.0))
        throw DomainError("braiding_angle0: width and tube radius must be > 0");

    const double t = std::tan(a);
    double arg = 0.0;
    switch (mode) {
    case BraidingMode::Geometric: {
        const double half_w = 0.5 * width.value();
        const double rf = tube_outer_radius.value();
        arg = half_w * t / std::sqrt(4.0 * rf * rf + half_w * half_w * (1.0 + t * t));
        break;
    }
    case BraidingMode::VerbatimMm:
    case BraidingMode::SqrtCorrected: {
        const double w = to_mm(width);
        const double rf = to_mm(tube_outer_radius);
        const double denom = 4.0 * rf * rf + 0.25 * w * w + 0.25 * w * w * t * t;
        arg = w * t / (mode == BraidingMode::VerbatimMm ? denom : std::sqrt(denom));
        break;
    }
    }
    if (!(arg >= -1.0 && arg <= 1.0))
        throw DomainError("braiding_angle0: arcsin argument " + fmt_value(arg) +
                          " outside [-1, 1] in mode " + std::string(to_string(mode)));
    return Angle{std::asin(arg)};
}

Length inner_radius(Length outer_radius, Length length, const TubeMaterial& tube) {
    const double r = outer_radius.value();
    const double l = length.value();
    const double l0 = tube.rest_length.value();
    if (!(r > 0.0 && l > 0.0)) throw DomainError("inner_radius: radius and length must be > 0");
    const double lambda_m = (l + l0) / (2.0 * l0);
    const double d2 = r * r - tube.wall_area_factor() / lambda_m;
    if (!(d2 >= 0.0)) throw DomainError("inner_radius: wall thicker than tube (r^2 < (r_f^2 - d_f^2) / lambda_m)");
    return Length{std::sqrt(d2)};
}

Volume internal_volume(Length length, Length inner, Length rest_length) {
    const double l = length.value();
    const double d = inner.value();
    const double l0 = rest_length.value();
    if (!(l > 0.0 && l0 > 0.0 && d >= 0.0))
        throw DomainError("internal_volume: lengths must be > 0 and inner radius >= 0");
    return Volume{0.5 * (l + l0) * std::numbers::pi * d * d};
}

std::string_view to_string(Pattern p) { return p == Pattern::Zigzag ? "zigzag" : "cross"; }

std::string_view to_string(BraidingMode m) {
    switch (m) {
    case BraidingMode::Geometric: return "geometric";
    case BraidingMode::VerbatimMm: return "verbatim-mm";
    case BraidingMode::SqrtCorrected: return "sqrt-corrected";
    }
    return "unknown";
}

std::string_view to_string(TubeSource s) {
    switch (s) {
    case TubeSource::Placeholder: return "placeholder (calibrated, not measured)";
    case TubeSource::FittedToTransition: return "fitted to reference transition pressures (calibrated, not measured)";
    case TubeSource::UserSupplied: return "user supplied";
    }
    return "unknown";
}

std::string_view to_string(TransitionSource s) {
    return s == TransitionSource::Derived ? "derived from inflation law" : "given";
}

Pattern parse_pattern(std::string_view s) {
    if (s == "zigzag") return Pattern::Zigzag;
    if (s == "cross") return Pattern::Cross;
    throw std::invalid_argument("unknown pattern '" + std::string(s) + "' (expected zigzag|cross)");
}

BraidingMode parse_braiding_mode(std::string_view s) {
    if (s == "geometric") return BraidingMode::Geometric;
    if (s == "verbatim-mm") return BraidingMode::VerbatimMm;
    if (s == "sqrt-corrected") return BraidingMode::SqrtCorrected;
    throw std::invalid_argument("unknown beta0 mode '" + std::string(s) +
                                "' (expected geometric|verbatim-mm|sqrt-corrected)");
}

} // namespace embroidery
