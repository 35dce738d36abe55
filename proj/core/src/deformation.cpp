#include "embroidery/deformation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "embroidery/dual.hpp"
#include "embroidery/errors.hpp"
#include "embroidery/strain_energy_kernel.hpp"

namespace embroidery {

namespace {

kernel::Geometry geometry_of(const ActuatorModel& m) {
    return {m.tube.rest_length.value(), m.sleeve_radius.value(), m.tube.wall_area_factor()};
}

template <class T>
T radius_kernel(const T& l, const ActuatorModel& m) {
    if (m.design.pattern == Pattern::Zigzag) return T(m.sleeve_radius.value());
    const double b0 = m.braiding_angle0.value();
    return kernel::pantograph_radius(l, std::sin(b0), std::cos(b0), geometry_of(m));
}

// Positive inside the wall (d^2 > 0).
double inner_radius_margin(double l, const ActuatorModel& m) {
    const double r = radius_kernel(l, m);
    return kernel::inner_radius_sq(l, r, geometry_of(m));
}

double bisect_margin(double lo, double hi, const ActuatorModel& m) {
    // margin(lo) and margin(hi) have opposite signs; returns the crossing.
    const bool lo_positive = inner_radius_margin(lo, m) > 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((inner_radius_margin(mid, m) > 0.0) == lo_positive)
            lo = mid;
        else
            hi = mid;
    }
    return lo_positive ? lo : hi;
}

void require_pattern(const ActuatorModel& m, Pattern p, const char* what) {
    if (m.design.pattern != p)
        throw std::invalid_argument(std::string(what) + ": requires a " + std::string(to_string(p)) +
                                    " model");
}

struct EnergyAndVolume {
    Dual energy;
    Dual volume;
};

EnergyAndVolume evaluate_with_derivative(double l, const ActuatorModel& m) {
    const kernel::Geometry g = geometry_of(m);
    const Dual ld = Dual::variable(l);
    const Dual r = radius_kernel(ld, m);
    return {kernel::strain_energy(ld, r, m.shear_modulus.value(), g), kernel::internal_volume(ld, r, g)};
}

std::string describe(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

void check_domain(Length l, const PatternConstraint& pc, const char* what) {
    if (!pc.in_domain(l)) {
        const auto [lo, hi] = pc.domain();
        throw DomainError(std::string(what) + ": l = " + describe(l.value()) +
                          " m outside admissible (" + describe(lo.value()) + ", " +
                          describe(hi.value()) + ") m (guard: d^2 > 0" +
                          (pc.model().design.pattern == Pattern::Cross ? ", (l/l0) sin(beta0) < 1)" : ")"));
    }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

PatternConstraint::PatternConstraint(const ActuatorModel& model) : model_{model} {
    const double l0 = model.tube.rest_length.value();
    if (inner_radius_margin(l0, model) <= 0.0)
        throw DomainError("pattern constraint: sleeve radius r0 too small for the tube wall at rest");

    double upper = std::numeric_limits<double>::infinity();
    if (model.design.pattern == Pattern::Cross) {
        const double full_extension = l0 / std::sin(model.braiding_angle0.value());
        upper = bisect_margin(l0, full_extension, model);
    }
    double lower = 0.0;
    const double tiny = l0 * 1e-12;
    if (inner_radius_margin(tiny, model) <= 0.0) lower = bisect_margin(tiny, l0, model);
    lower_ = Length{lower};
    upper_ = Length{upper};
}

bool PatternConstraint::in_domain(Length l) const noexcept {
    return l > lower_ && l < upper_ && inner_radius_margin(l.value(), model_) > 0.0;
}

Length PatternConstraint::radius_of(Length l) const {
    if (model_.design.pattern == Pattern::Zigzag) return model_.sleeve_radius;
    return cross_radius_from_l(l, model_);
}

Angle PatternConstraint::theta_of(Length l) const {
    if (model_.design.pattern == Pattern::Zigzag) return zigzag_theta_from_l(l, model_);
    return cross_theta_from_l(l, model_);
}

Length PatternConstraint::l_of(Angle theta) const {
    if (model_.design.pattern == Pattern::Zigzag) return zigzag_l_from_theta(theta, model_);
    return cross_l_from_theta(theta, model_);
}

Energy strain_energy(Length l, const ActuatorModel& model) {
    const PatternConstraint pc{model};
    check_domain(l, pc, "strain_energy");
    const double r = radius_kernel(l.value(), model);
    return Energy{kernel::strain_energy(l.value(), r, model.shear_modulus.value(), geometry_of(model))};
}

Force strain_energy_gradient(Length l, const ActuatorModel& model) {
    const PatternConstraint pc{model};
    check_domain(l, pc, "strain_energy_gradient");
    return Force{evaluate_with_derivative(l.value(), model).energy.d};
}

Force strain_energy_gradient_fd(Length l, const ActuatorModel& model) {
    const double l0 = model.tube.rest_length.value();
    const double h = std::max(1e-7 * l0, 1e-10);
    const double ep = strain_energy(Length{l.value() + h}, model).value();
    const double em = strain_energy(Length{l.value() - h}, model).value();
    return Force{(ep - em) / (2.0 * h)};
}

double internal_volume_gradient(Length l, const ActuatorModel& model) {
    const PatternConstraint pc{model};
    check_domain(l, pc, "internal_volume_gradient");
    return evaluate_with_derivative(l.value(), model).volume.d;
}

Force generalized_force(Length l, Pressure pressure, const ActuatorModel& model) {
    const double gauge = pressure.value() - model.transition_pressure.value();
    return Force{gauge * internal_volume_gradient(l, model)};
}

Force equilibrium_residual(Length l, Pressure pressure, const ActuatorModel& model) {
    const PatternConstraint pc{model};
    check_domain(l, pc, "equilibrium_residual");
    const EnergyAndVolume ev = evaluate_with_derivative(l.value(), model);
    const double gauge = pressure.value() - model.transition_pressure.value();
    return Force{ev.energy.d - gauge * ev.volume.d};
}

DeformationState state_at(Length l, Pressure pressure, const ActuatorModel& model) {
    const PatternConstraint pc{model};
    check_domain(l, pc, "state_at");
    const Length r = pc.radius_of(l);
    return {l, r, inner_radius(r, l, model.tube), pc.theta_of(l), pressure};
}

DeformationState equilibrium_length(Pressure pressure, const ActuatorModel& model,
                                    const SolverOptions& options) {
    if (!(pressure.value() >= 0.0)) throw DomainError("equilibrium_length: pressure must be >= 0");
    const double l0 = model.tube.rest_length.value();
    if (pressure <= model.transition_pressure) {
        const PatternConstraint pc{model};
        const Length r = pc.radius_of(model.tube.rest_length);
        return {model.tube.rest_length, r, inner_radius(r, model.tube.rest_length, model.tube),
                Angle{0.0}, pressure};
    }

    const PatternConstraint pc{model};
    const double gauge = pressure.value() - model.transition_pressure.value();
    auto residual = [&](double l) {
        const EnergyAndVolume ev = evaluate_with_derivative(l, model);
        return ev.energy.d - gauge * ev.volume.d;
    };

    const double g0 = residual(l0);
    if (g0 == 0.0) return state_at(model.tube.rest_length, pressure, model);

    const double step = options.scan_step_fraction * l0;
    const double scan_max = options.max_length_factor * l0;

    struct Scan {
        double direction;
        double last_l;
        double last_g;
        bool active{true};
    };
    // Upward first: ties between the two directions resolve toward extension.
    Scan scans[2] = {{+1.0, l0, g0}, {-1.0, l0, g0}};

    double lo = 0.0;
    double hi = 0.0;
    bool bracketed = false;
    for (long k = 1; !bracketed && (scans[0].active || scans[1].active); ++k) {
        for (Scan& s : scans) {
            if (!s.active) continue;
            const double l = l0 + s.direction * static_cast<double>(k) * step;
            if (l > scan_max || !pc.in_domain(Length{l})) {
                s.active = false;
                continue;
            }
            const double g = residual(l);
            if (sign_of(g) != sign_of(s.last_g)) {
                lo = std::min(s.last_l, l);
                hi = std::max(s.last_l, l);
                bracketed = true;
                break;
            }
            s.last_l = l;
            s.last_g = g;
        }
    }
    if (!bracketed) {
        const Scan& edge = std::abs(scans[0].last_l - l0) >= std::abs(scans[1].last_l - l0) ? scans[0]
                                                                                           : scans[1];
        throw NoEquilibriumError("no equilibrium at P = " + describe(to_kpa(pressure)) +
                                     " kPa: residual keeps sign " + (g0 > 0 ? "+" : "-") +
                                     " up to the domain edges (l in [" + describe(scans[1].last_l) +
                                     ", " + describe(scans[0].last_l) + "] m)",
                                 edge.last_l, sign_of(edge.last_g));
    }

    int sign_lo = sign_of(residual(lo));
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = residual(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sign_of(gm) == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    const double l_star = std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
    if (hi - lo > options.length_tolerance)
        throw NoEquilibriumError("equilibrium bisection did not reach tolerance", l_star, 0);
    return state_at(Length{l_star}, pressure, model);
}

Angle zigzag_theta_from_l(Length l, const ActuatorModel& model) {
    require_pattern(model, Pattern::Zigzag, "zigzag_theta_from_l");
    return Angle{(model.tube.rest_length.value() - l.value()) / (2.0 * model.sleeve_radius.value())};
}

Length zigzag_l_from_theta(Angle theta, const ActuatorModel& model) {
    require_pattern(model, Pattern::Zigzag, "zigzag_l_from_theta");
    return Length{model.tube.rest_length.value() - 2.0 * model.sleeve_radius.value() * theta.value()};
}

double cross_gamma(const ActuatorModel& model) {
    require_pattern(model, Pattern::Cross, "cross_gamma");
    return 2.0 * model.sleeve_radius.value() /
           (model.tube.rest_length.value() * std::cos(model.braiding_angle0.value()));
}

namespace {

double cross_length_ratio(double g, double sb, double cb) {
    const double q = std::sqrt(cb * cb + g * g * sb * sb);
    return (1.0 - g * q) / (1.0 + g * g * sb * sb);
}

} // namespace

Length cross_l_from_theta(Angle theta, const ActuatorModel& model) {
    const double gamma = cross_gamma(model);
    const double b0 = model.braiding_angle0.value();
    const double y = cross_length_ratio(gamma * theta.value(), std::sin(b0), std::cos(b0));
    if (!(y > 0.0))
        throw DomainError("cross_l_from_theta: theta = " + describe(theta.value()) +
                          " rad beyond the invertible branch (l <= 0)");
    return Length{model.tube.rest_length.value() * y};
}

Angle cross_theta_from_l(Length l, const ActuatorModel& model) {
    const double gamma = cross_gamma(model);
    const double b0 = model.braiding_angle0.value();
    const double sb = std::sin(b0);
    const double cb = std::cos(b0);
    const double l0 = model.tube.rest_length.value();
    const double y = l.value() / l0;
    if (!(y > 0.0 && y * sb < 1.0))
        throw DomainError("cross_theta_from_l: l = " + describe(l.value()) +
                          " m outside (0, l0 / sin(beta0))");

    // y(g) decreases from 1/sin(beta0) (g -> -inf) through 1 (g = 0) to 0 at g_zero.
    double g_lo = 0.0;
    double g_hi = 0.0;
    if (y <= 1.0) {
        g_hi = std::sqrt(2.0 / (cb * cb + std::sqrt(cb * cb * cb * cb + 4.0 * sb * sb)));
    } else {
        g_lo = -1.0;
        for (int i = 0; i < 1100 && cross_length_ratio(g_lo, sb, cb) < y; ++i) g_lo *= 2.0;
        if (cross_length_ratio(g_lo, sb, cb) < y)
            throw DomainError("cross_theta_from_l: l too close to full pantograph extension");
    }
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (g_lo + g_hi);
        if (mid <= g_lo || mid >= g_hi) break;
        if (cross_length_ratio(mid, sb, cb) > y)
            g_lo = mid;
        else
            g_hi = mid;
    }
    const double e_lo = std::abs(cross_length_ratio(g_lo, sb, cb) - y);
    const double e_hi = std::abs(cross_length_ratio(g_hi, sb, cb) - y);
    return Angle{(e_lo <= e_hi ? g_lo : g_hi) / gamma};
}

Length cross_radius_from_l(Length l, const ActuatorModel& model) {
    require_pattern(model, Pattern::Cross, "cross_radius_from_l");
    const double b0 = model.braiding_angle0.value();
    const double s = l.value() / model.tube.rest_length.value() * std::sin(b0);
    if (!(l.value() > 0.0 && s <= 1.0))
        throw DomainError("cross_radius_from_l: (l/l0) sin(beta0) = " + describe(s) +
                          " outside (0, 1] (pantograph fully extended)");
    return Length{model.sleeve_radius.value() * std::sqrt(1.0 - s * s) / std::cos(b0)};
}

Angle pressure_to_angle(Pressure pressure, const ActuatorModel& model, const SolverOptions& options) {
    if (pressure <= model.transition_pressure) return Angle{0.0};
    return reported_angle(equilibrium_length(pressure, model, options).theta_model, model);
}

Pressure angle_to_pressure(Angle theta, const ActuatorModel& model) {
    if (theta.value() == 0.0) return model.transition_pressure;
    const PatternConstraint pc{model};
    const Length l = pc.l_of(reported_angle(theta, model));
    check_domain(l, pc, "angle_to_pressure");
    const EnergyAndVolume ev = evaluate_with_derivative(l.value(), model);
    if (ev.volume.d == 0.0)
        throw DomainError("angle_to_pressure: internal volume is stationary at l = " + describe(l.value()) + " m");
    const double gauge = ev.energy.d / ev.volume.d;
    if (!(gauge >= 0.0))
        throw DomainError("angle_to_pressure: theta = " + describe(theta.value()) +
                          " rad needs a pressure below P0 (bends the other way)");
    return model.transition_pressure + Pressure{gauge};
}

PressureAngleCurve sweep_curve(const ActuatorModel& model, Pressure max_pressure, Pressure step,
                               const SolverOptions& options) {
    if (!(step.value() > 0.0)) throw std::invalid_argument("sweep_curve: step must be > 0");
    if (!(max_pressure.value() >= 0.0)) throw std::invalid_argument("sweep_curve: max pressure must be >= 0");

    PressureAngleCurve curve;
    curve.metadata = {model, max_pressure, step, 0};
    const auto count = static_cast<std::size_t>(std::floor(max_pressure / step + 1e-9)) + 1;
    curve.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Pressure p = static_cast<double>(i) * step;
        CurveSample sample;
        sample.pressure = p;
        try {
            const DeformationState st = equilibrium_length(p, model, options);
            sample.theta = reported_angle(st.theta_model, model);
            sample.length = st.length;
            sample.radius = st.outer_radius;
        } catch (const NoEquilibriumError&) {
            sample.ok = false;
            sample.status = "no_equilibrium";
        } catch (const DomainError&) {
            sample.ok = false;
            sample.status = "domain_error";
        }
        if (!sample.ok) ++curve.metadata.failed_samples;
        curve.samples.push_back(std::move(sample));
    }
    return curve;
}

std::string_view to_string(Branch b) { return b == Branch::Up ? "up" : "down"; }

Branch parse_branch(std::string_view s) {
    if (s == "up") return Branch::Up;
    if (s == "down") return Branch::Down;
    throw std::invalid_argument("unknown branch '" + std::string(s) + "' (expected up|down)");
}

} // namespace embroidery
