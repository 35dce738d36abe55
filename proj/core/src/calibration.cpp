#include "embroidery/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "embroidery/deformation.hpp"
#include "embroidery/errors.hpp"
#include "embroidery/inflation.hpp"

namespace embroidery {

namespace {

void check_bounds(const ParameterBounds& b, const char* name) {
    if (!(std::isfinite(b.lower) && std::isfinite(b.upper) && b.lower < b.upper))
        throw std::invalid_argument(std::string("calibration: bounds for ") + name +
                                    " must be finite with lower < upper");
}

double to_unit(double v, const ParameterBounds& b) { return (v - b.lower) / (b.upper - b.lower); }
double from_unit(double u, const ParameterBounds& b) { return b.lower + u * (b.upper - b.lower); }

// G spans orders of magnitude, so the simplex sees it on a log scale.
double to_log_unit(double v, const ParameterBounds& b) { return std::log(v / b.lower) / std::log(b.upper / b.lower); }
double from_log_unit(double u, const ParameterBounds& b) { return b.lower * std::pow(b.upper / b.lower, u); }

std::vector<PressureAnglePair> usable(const CalibrationProblem& p) {
    std::vector<PressureAnglePair> out;
    for (const auto& o : p.observations)
        if (p.include_down_branch || o.branch == Branch::Up) out.push_back(o);
    return out;
}

} // namespace

void CalibrationProblem::validate() const {
    if (usable(*this).size() < 3)
        throw std::invalid_argument("calibration: need at least 3 observations on the fitted branch(es)");
    check_bounds(shear_modulus_bounds, "G");
    check_bounds(transition_bounds, "P0");
    if (shear_modulus_bounds.lower <= 0.0) throw std::invalid_argument("calibration: G bounds must be > 0");
    if (transition_bounds.lower < 0.0) throw std::invalid_argument("calibration: P0 bounds must be >= 0");
    if (!(huber_delta > 0.0)) throw std::invalid_argument("calibration: Huber delta must be > 0");
}

double residual_loss(double residual, Loss loss, double huber_delta) {
    if (loss == Loss::L2) return residual * residual;
    const double a = std::abs(residual);
    return a <= huber_delta ? 0.5 * a * a : huber_delta * (a - 0.5 * huber_delta);
}

FitResult fit_pressure_angle(const CalibrationProblem& problem, const ActuatorModel& model0) {
    problem.validate();
    model0.validate();
    const std::vector<PressureAnglePair> obs = usable(problem);

    const auto& free = problem.free_parameters;
    auto bounds_of = [&](FitParameter fp) {
        return fp == FitParameter::ShearModulus ? problem.shear_modulus_bounds : problem.transition_bounds;
    };
    auto apply = [&](std::span<const double> u) {
        ActuatorModel m = model0;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (free[i] == FitParameter::ShearModulus)
                m.shear_modulus = Pressure{from_log_unit(u[i], bounds_of(free[i]))};
            else {
                m.transition_pressure = Pressure{from_unit(u[i], bounds_of(free[i]))};
                m.transition_source = TransitionSource::Given;
            }
        }
        return m;
    };

    struct Residuals {
        double loss{0.0};
        double sum_sq{0.0};
        bool ok{true};
    };
    auto residuals = [&](const ActuatorModel& m) {
        Residuals r;
        for (const auto& o : obs) {
            try {
                const double e = pressure_to_angle(o.pressure, m).value() - o.theta.value();
                r.loss += residual_loss(e, problem.loss, problem.huber_delta);
                r.sum_sq += e * e;
            } catch (const NoEquilibriumError&) {
                r.ok = false;
                return r;
            } catch (const DomainError&) {
                r.ok = false;
                return r;
            }
        }
        return r;
    };

    std::vector<double> start;
    std::vector<double> lo(free.size(), 0.0);
    std::vector<double> hi(free.size(), 1.0);
    for (FitParameter fp : free) {
        const double u = fp == FitParameter::ShearModulus
                             ? to_log_unit(model0.shear_modulus.value(), bounds_of(fp))
                             : to_unit(model0.transition_pressure.value(), bounds_of(fp));
        start.push_back(std::clamp(u, 0.0, 1.0));
    }

    auto objective = [&](std::span<const double> u) {
        const Residuals r = residuals(apply(u));
        return r.ok ? r.loss : std::numeric_limits<double>::infinity();
    };
    const NelderMeadResult nm = minimize_nelder_mead(objective, start, lo, hi, problem.optimizer);

    const ActuatorModel best = free.empty() ? model0 : apply(nm.x);
    const Residuals r = residuals(best);

    FitResult out;
    out.shear_modulus = best.shear_modulus;
    out.transition_pressure = best.transition_pressure;
    out.rmse = r.ok ? std::sqrt(r.sum_sq / static_cast<double>(obs.size()))
                    : std::numeric_limits<double>::infinity();
    out.evaluations = nm.evaluations;
    out.converged = nm.converged && r.ok;
    out.observations_used = obs.size();
    out.objective_trace = nm.best_trace;
    return out;
}

TubeFitResult fit_tube_geometry(const std::vector<TransitionTarget>& targets, const TubeMaterial& base,
                                const TubeFitOptions& options) {
    check_bounds(options.outer_radius_bounds, "r_f");
    check_bounds(options.rubber_modulus_bounds, "G_e");
    const bool fit_radius = !options.fixed_outer_radius.has_value();
    const bool fit_modulus = !options.fixed_rubber_modulus.has_value();
    const std::size_t unknowns = static_cast<std::size_t>(fit_radius) + static_cast<std::size_t>(fit_modulus);
    if (targets.empty() || targets.size() < unknowns)
        throw std::invalid_argument("fit_tube_geometry: need at least as many targets as free parameters (" +
                                    std::to_string(unknowns) + ")");
    if (targets.size() >= 2) {
        const bool all_same = std::all_of(targets.begin(), targets.end(),
                                          [&](const TransitionTarget& t) { return t.width == targets[0].width; });
        if (all_same) throw std::invalid_argument("fit_tube_geometry: degenerate targets (all widths equal)");
    }
    for (const auto& t : targets)
        if (!(t.width.value() > 0.0 && t.transition_pressure.value() >= 0.0))
            throw std::invalid_argument("fit_tube_geometry: targets need w > 0 and P0 >= 0");

    auto tube_at = [&](std::span<const double> u) {
        TubeMaterial t = base;
        std::size_t k = 0;
        t.outer_radius = fit_radius ? Length{from_unit(u[k++], options.outer_radius_bounds)}
                                    : *options.fixed_outer_radius;
        t.rubber_shear_modulus = fit_modulus ? Pressure{from_unit(u[k++], options.rubber_modulus_bounds)}
                                             : *options.fixed_rubber_modulus;
        t.source = TubeSource::FittedToTransition;
        return t;
    };
    // d_f plays no role here; keep it out of the way of r_f during the search.
    auto predict = [](const TubeMaterial& t, Length w) {
        const Length r0 = sleeve_radius(w, t.outer_radius);
        if (r0 <= t.outer_radius) return Pressure{0.0};
        return inflation_pressure(r0, t);
    };
    constexpr double scale = 1e3; // residuals in kPa for conditioning
    auto objective = [&](std::span<const double> u) {
        const TubeMaterial t = tube_at(u);
        double s = 0.0;
        for (const auto& tg : targets) {
            const double e = (predict(t, tg.width) - tg.transition_pressure).value() / scale;
            s += e * e;
        }
        return s;
    };

    std::vector<double> start(unknowns, 0.5);
    std::vector<double> lo(unknowns, 0.0);
    std::vector<double> hi(unknowns, 1.0);
    const NelderMeadResult nm = minimize_nelder_mead(objective, start, lo, hi, options.optimizer);

    const TubeMaterial t = tube_at(nm.x);
    TubeFitResult out;
    out.outer_radius = t.outer_radius;
    out.rubber_modulus = t.rubber_shear_modulus;
    double s = 0.0;
    for (const auto& tg : targets) {
        const Pressure p = predict(t, tg.width);
        out.predicted.push_back(p);
        const double e = (p - tg.transition_pressure).value();
        s += e * e;
    }
    out.rmse = Pressure{std::sqrt(s / static_cast<double>(targets.size()))};
    out.evaluations = nm.evaluations;
    out.converged = nm.converged;
    return out;
}

} // namespace embroidery
