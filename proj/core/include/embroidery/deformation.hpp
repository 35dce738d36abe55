#pragma once

#include <utility>

#include "embroidery/actuator.hpp"
#include "embroidery/curve.hpp"
#include "embroidery/units.hpp"

namespace embroidery {

struct DeformationState {
    Length length;       // l, embroidery-side axial length
    Length outer_radius; // r
    Length inner_radius; // d
    Angle theta_model;   // before orientation sign
    Pressure pressure;
};

/// Pattern-specific closure r(l), the admissible range of l and the l <-> theta maps.
/// Zigzag: r = r0, theta = (l0 - l) / (2 r0).
/// Cross: pantograph relation between (l, r) and the braid angle, theta from
/// l = l0 (1 - g sqrt(cos^2 b0 + g^2 sin^2 b0)) / (1 + g^2 sin^2 b0), g = gamma theta.
class PatternConstraint {
  public:
    explicit PatternConstraint(const ActuatorModel& model);

    [[nodiscard]] const ActuatorModel& model() const noexcept { return model_; }

    /// Open interval of admissible l (d^2 > 0, pantograph not fully extended).
    [[nodiscard]] std::pair<Length, Length> domain() const noexcept { return {lower_, upper_}; }
    [[nodiscard]] bool in_domain(Length l) const noexcept;

    [[nodiscard]] Length radius_of(Length l) const;
    [[nodiscard]] Angle theta_of(Length l) const;
    [[nodiscard]] Length l_of(Angle theta) const;

  private:
    ActuatorModel model_;
    Length lower_;
    Length upper_;
};

Energy strain_energy(Length l, const ActuatorModel& model);

/// dE_s/dl including the dependence of r and d on l. Forward-mode exact.
Force strain_energy_gradient(Length l, const ActuatorModel& model);

/// Central difference of strain_energy with h = max(1e-7 l0, 1e-10 m).
Force strain_energy_gradient_fd(Length l, const ActuatorModel& model);

/// dV_i/dl in m^2.
double internal_volume_gradient(Length l, const ActuatorModel& model);

/// F = (P - P0) dV_i/dl.
Force generalized_force(Length l, Pressure pressure, const ActuatorModel& model);

/// dE_s/dl - F; its zero is the static equilibrium.
Force equilibrium_residual(Length l, Pressure pressure, const ActuatorModel& model);

struct SolverOptions {
    double scan_step_fraction{1e-4}; // of l0
    double length_tolerance{1e-9};   // m; bisection continues to the float grid
    double max_length_factor{3.0};   // scan stops at this multiple of l0
};

/// Quasi-static equilibrium. Rest state for P <= P0; otherwise the first
/// residual sign change found scanning outward from l0 (upward first),
/// refined by bisection. Throws NoEquilibriumError if none exists in range.
DeformationState equilibrium_length(Pressure pressure, const ActuatorModel& model,
                                    const SolverOptions& options = {});

/// Full state at a given l (no equilibrium implied).
DeformationState state_at(Length l, Pressure pressure, const ActuatorModel& model);

Angle zigzag_theta_from_l(Length l, const ActuatorModel& model);
Length zigzag_l_from_theta(Angle theta, const ActuatorModel& model);

/// gamma = 2 r0 / (l0 cos beta0)
double cross_gamma(const ActuatorModel& model);
Length cross_l_from_theta(Angle theta, const ActuatorModel& model);
/// Bracketed inversion of cross_l_from_theta (float-grid bisection).
Angle cross_theta_from_l(Length l, const ActuatorModel& model);
Length cross_radius_from_l(Length l, const ActuatorModel& model);

inline Angle reported_angle(Angle theta_model, const ActuatorModel& model) {
    return static_cast<double>(model.design.orientation_sign) * theta_model;
}

/// Bending angle in the reported sign convention; exactly 0 for P <= P0.
Angle pressure_to_angle(Pressure pressure, const ActuatorModel& model,
                        const SolverOptions& options = {});

/// Pressure at which the state with reported angle theta is an equilibrium:
/// P = P0 + (dE_s/dl) / (dV_i/dl) at l(theta). Returns P0 for theta = 0.
/// Throws DomainError when theta is outside the pattern's domain, the volume
/// is stationary there, or the required pressure would lie below P0.
Pressure angle_to_pressure(Angle theta, const ActuatorModel& model);

/// Samples at 0, step, 2 step, ..., <= max_pressure. Solver failures mark
/// the sample instead of aborting.
PressureAngleCurve sweep_curve(const ActuatorModel& model, Pressure max_pressure, Pressure step,
                               const SolverOptions& options = {});

} // namespace embroidery
