#pragma once

#include <optional>
#include <vector>

#include "embroidery/actuator.hpp"
#include "embroidery/curve.hpp"
#include "embroidery/nelder_mead.hpp"

namespace embroidery {

enum class FitParameter { ShearModulus, TransitionPressure };
enum class Loss { L2, Huber };

struct ParameterBounds {
    double lower; // SI
    double upper;
};

struct CalibrationProblem {
    std::vector<PressureAnglePair> observations;
    std::vector<FitParameter> free_parameters{FitParameter::ShearModulus, FitParameter::TransitionPressure};
    ParameterBounds shear_modulus_bounds{0.05e6, 50e6};  // Pa
    ParameterBounds transition_bounds{0.0, 400e3};       // Pa
    Loss loss{Loss::L2};
    double huber_delta{5.0 * 3.14159265358979323846 / 180.0}; // rad
    bool include_down_branch{false};
    NelderMeadOptions optimizer{};

    /// Throws std::invalid_argument on < 3 usable observations or bad bounds.
    void validate() const;
};

struct FitResult {
    Pressure shear_modulus;
    Pressure transition_pressure;
    double rmse{0.0}; // rad, over the observations used
    int evaluations{0};
    bool converged{false};
    std::size_t observations_used{0};
    std::vector<double> objective_trace;
};

/// Loss contribution of one angle residual (rad).
double residual_loss(double residual, Loss loss, double huber_delta);

/// Fits the free parameters of model0 (start values taken from model0,
/// clamped into bounds). Trial points where the solver fails score +inf.
FitResult fit_pressure_angle(const CalibrationProblem& problem, const ActuatorModel& model0);

struct TransitionTarget {
    Length width;
    Pressure transition_pressure;
};

struct TubeFitOptions {
    ParameterBounds outer_radius_bounds{0.3e-3, 3e-3};   // m
    ParameterBounds rubber_modulus_bounds{0.05e6, 5e6}; // Pa
    std::optional<Length> fixed_outer_radius;
    std::optional<Pressure> fixed_rubber_modulus;
    NelderMeadOptions optimizer{};
};

struct TubeFitResult {
    Length outer_radius;
    Pressure rubber_modulus;
    Pressure rmse; // over targets
    int evaluations{0};
    bool converged{false};
    std::vector<Pressure> predicted; // per target
};

/// Fits (r_f, G_e) so the inflation-law transition pressures match the
/// targets in the least-squares sense. Other tube fields come from base;
/// d_f does not enter the transition pressure.
TubeFitResult fit_tube_geometry(const std::vector<TransitionTarget>& targets,
                                const TubeMaterial& base = {}, const TubeFitOptions& options = {});

} // namespace embroidery
