// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "embroidery/calibration.hpp"
#include "embroidery/deformation.hpp"
#include "embroidery/errors.hpp"
#include "embroidery/experiment.hpp"
#include "embroidery/inflation.hpp"
#include "embroidery/reference_designs.hpp"
#include "embroidery/strain_energy_kernel.hpp"
#include "oracles.hpp"

using namespace embroidery;
using namespace embroidery::literals;

namespace {

struct Outcome {
    bool pass{true};
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, const std::function<void(Outcome&)>& body, double time_limit_s = 0.0) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (time_limit_s > 0.0) {
        o.detail << " runtime " << dt << " s (limit " << time_limit_s << " s)";
        o.require(dt < time_limit_s, "runtime");
    }
    std::printf("%s criterion %d (%s):%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double onset_kpa(const ActuatorModel& m) {
    for (int p = 0; p <= 400; ++p)
        if (std::abs(to_deg(pressure_to_angle(kilopascals(p), m))) > 1.0) return p;
    return std::nan("");
}

std::vector<ActuatorModel> reference_models() {
    std::vector<ActuatorModel> v;
    for (const auto& d : zigzag_reference_designs()) v.push_back(reference_model(d));
    for (const auto& d : cross_reference_designs()) v.push_back(reference_model(d));
    return v;
}

std::string label(const ActuatorModel& m) {
    std::ostringstream s;
    if (m.design.pattern == Pattern::Zigzag)
        s << "zigzag w=" << to_mm(m.design.width) << "mm";
    else
        s << "cross a0=" << to_deg(m.design.angle) << "deg";
    return s.str();
}

void transition_reproduction(Outcome& o) {
    const auto targets = reference_transition_targets();
    const auto fit = fit_tube_geometry(targets);
    TubeMaterial tube;
    tube.outer_radius = fit.outer_radius;
    tube.rubber_shear_modulus = fit.rubber_modulus;
    o.detail << " r_f=" << to_mm(fit.outer_radius) << "mm G_e=" << to_mpa(fit.rubber_modulus) << "MPa;";
    for (const auto& t : targets) {
        const double p0 = to_kpa(transition_pressure(tube, EmbroideryDesign::zigzag(t.width)).pressure);
        const double target = to_kpa(t.transition_pressure);
        o.detail << " w=" << to_mm(t.width) << ": " << p0 << " vs " << target << " kPa;";
        o.require(std::abs(p0 - target) <= 0.2 * target, "P0 within 20%");
    }
}

void zigzag_peak(Outcome& o) {
    const auto designs = zigzag_reference_designs();
    const auto m = reference_model(designs.front()); // w = 5 mm
    const double theta = to_deg(pressure_to_angle(290_kPa, m));
    o.detail << " theta(290 kPa)=" << theta << " deg, target +155 +- 25";
    o.require(theta > 0.0, "positive reported sign");
    o.require(std::abs(std::abs(theta) - 155.0) <= 25.0, "|theta| within 155 +- 25 deg");
}

void cross_sign_rule(Outcome& o) {
    for (const auto& d : cross_reference_designs()) {
        const auto m = reference_model(d);
        const double a0 = to_deg(d.design.angle);
        const double theta = to_deg(pressure_to_angle(300_kPa, m));
        o.detail << " a0=" << a0 << ": " << theta << " deg;";
        if (a0 >= 45.0)
            o.require(theta < 0.0, "negative for a0 >= 45");
        else
            o.require(theta > 0.0, "positive for a0 <= 30");
        if (std::abs(a0 - 60.0) < 1e-9) o.require(std::abs(std::abs(theta) - 48.0) <= 0.5 * 48.0, "|theta(60)| within 48 +- 50%");
    }
}

void onset_pressures(Outcome& o) {
    for (const auto& m : reference_models()) {
        const double onset = onset_kpa(m);
        const double p0 = to_kpa(m.transition_pressure);
        o.detail << " " << label(m) << ": " << onset << " vs " << p0 << " kPa;";
        o.require(std::abs(onset - p0) <= 15.0, label(m) + " onset within 15 kPa");
    }
}

void property_suite(Outcome& o) {
    std::mt19937_64 rng(20240521);
    const TubeMaterial& tube = reference_tube();

    // Gradient check, 100 random states per pattern.
    {
        std::uniform_real_distribution<double> frac(0.01, 0.3), coin(0.0, 1.0), G(0.5, 12.0), w(5.0, 9.0),
            alpha(10.0, 65.0);
        double worst = 0.0;
        for (int pattern = 0; pattern < 2; ++pattern) {
            int n = 0;
            while (n < 100) {
                const auto design = pattern == 0 ? EmbroideryDesign::zigzag(millimeters(w(rng)))
                                                 : EmbroideryDesign::cross(7_mm, degrees(alpha(rng)));
                const auto m = make_actuator_model(tube, design, megapascals(G(rng)));
                const PatternConstraint pc(m);
                const Length l = (1.0 + (coin(rng) < 0.5 ? -1 : 1) * frac(rng)) * tube.rest_length;
                if (!pc.in_domain(l * 1.0001) || !pc.in_domain(l * 0.9999)) continue;
                const double a = strain_energy_gradient(l, m).value();
                const double fd = strain_energy_gradient_fd(l, m).value();
                worst = std::max(worst, std::abs(a - fd) / std::max(std::abs(a), std::abs(fd)));
                ++n;
            }
        }
        o.detail << " gradient rel err " << worst << ";";
        o.require(worst <= 1e-4, "gradient check 1e-4");
    }

    // Closed-form energy against quadrature of the density, 20 states.
    {
        std::uniform_real_distribution<double> L(0.8, 1.25), R(0.9, 1.15), G(0.5, 12.0);
        const Length r0 = sleeve_radius(7_mm, tube.outer_radius);
        const kernel::Geometry g{tube.rest_length.value(), r0.value(), tube.wall_area_factor()};
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double l = L(rng) * g.rest_length, r = R(rng) * r0.value(), mod = G(rng) * 1e6;
            const double closed = kernel::strain_energy(l, r, mod, g);
            const double quad = testing::strain_energy_quadrature(l, r, r0.value(), g.rest_length,
                                                                  tube.outer_radius.value(), tube.inner_radius.value(), mod);
            worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
        }
        o.detail << " energy oracle rel err " << worst << ";";
        o.require(worst <= 1e-6, "energy oracle 1e-6");
    }

    // Solver states: incompressibility, residual, rest state below P0.
    {
        const double wall = tube.wall_area_factor();
        double worst_wall = 0.0, worst_res = 0.0;
        bool rest_exact = true;
        for (const auto& m : reference_models()) {
            for (int p = 0; p <= 300; p += 5) {
                const Pressure P = kilopascals(p);
                DeformationState s;
                try {
                    s = equilibrium_length(P, m);
                } catch (const NoEquilibriumError&) {
                    continue;
                }
                const double l0 = tube.rest_length.value();
                const double lm = (s.length.value() + l0) / (2 * l0);
                const double r = s.outer_radius.value(), d = s.inner_radius.value();
                worst_wall = std::max(worst_wall, std::abs((r * r - d * d) * lm - wall) / wall);
                if (P <= m.transition_pressure) {
                    rest_exact = rest_exact && pressure_to_angle(P, m).value() == 0.0 && s.theta_model.value() == 0.0;
                } else {
                    const double dE = strain_energy_gradient(s.length, m).value();
                    const double F = generalized_force(s.length, P, m).value();
                    worst_res = std::max(worst_res, std::abs(dE - F) / std::max(std::abs(dE), 1.0));
                }
            }
        }
        o.detail << " incompressibility " << worst_wall << "; residual " << worst_res << ";";
        o.require(worst_wall <= 1e-12, "incompressibility 1e-12");
        o.require(worst_res <= 1e-6, "equilibrium residual 1e-6");
        o.require(rest_exact, "theta(P <= P0) == 0");
    }

    // Pantograph round trip on the valid branch.
    {
        double worst = 0.0;
        for (const auto& d : cross_reference_designs()) {
            const auto m = reference_model(d);
            const double l0 = tube.rest_length.value();
            for (double f = 0.5; f < 1.0 / std::sin(m.braiding_angle0.value()) - 1e-3; f += 0.01) {
                const Length l{f * l0};
                const Angle th = cross_theta_from_l(l, m);
                const Length back = cross_l_from_theta(th, m);
                worst = std::max(worst, std::abs(back.value() - l.value()) / l.value());
                // Independent relation theta = (l0 - l) / (2 r(l)).
                const double r = cross_radius_from_l(l, m).value();
                if (std::abs(th.value()) > 1e-6)
                    worst = std::max(worst, std::abs((l0 - l.value()) / (2 * r) - th.value()) / std::abs(th.value()));
            }
        }
        o.detail << " pantograph " << worst << ";";
        o.require(worst <= 1e-9, "pantograph round trip 1e-9");
    }

    // Inflation law.
    {
        bool ok = inflation_pressure(tube.outer_radius, tube).value() == 0.0;
        double prev = 0.0, worst = 0.0;
        for (double s = 1.0 + 1e-3; s <= 4.0; s += 1e-3) {
            const Length r = s * tube.outer_radius;
            const double p = inflation_pressure(r, tube).value();
            ok = ok && p > prev;
            prev = p;
            worst = std::max(worst, std::abs(radius_at_pressure(Pressure{p}, tube).value() - r.value()) / r.value());
        }
        o.detail << " inflation round trip " << worst;
        o.require(ok, "P(r_f) = 0 and strict monotonicity");
        o.require(worst <= 1e-9, "radius_at_pressure round trip 1e-9");
    }
}

void calibration_round_trip(Outcome& o) {
    const auto truth = make_actuator_model(reference_tube(), EmbroideryDesign::zigzag(7_mm), 2.7_MPa,
                                           {BraidingMode::Geometric, true, 85_kPa});
    CalibrationProblem prob;
    for (int i = 0; i <= 10; ++i) {
        const Pressure p = kilopascals(85.0 + 10.0 * i);
        prob.observations.push_back({p, pressure_to_angle(p, truth), Branch::Up});
    }
    ActuatorModel start = truth;
    start.shear_modulus = 1_MPa;
    start.transition_pressure = 50_kPa;
    const auto fit = fit_pressure_angle(prob, start);
    const double eg = std::abs(fit.shear_modulus / truth.shear_modulus - 1.0);
    const double ep = std::abs(fit.transition_pressure / truth.transition_pressure - 1.0);
    o.detail << " G " << to_mpa(fit.shear_modulus) << " MPa (rel " << eg << "), P0 " << to_kpa(fit.transition_pressure)
             << " kPa (rel " << ep << "), " << fit.evaluations << " evals;";
    o.require(eg <= 1e-3 && ep <= 1e-3, "recovery within 0.1%");
}

void marker_metric(Outcome& o) {
    const auto straight = testing::arc_frame(0.0);
    const double zero = marker_bending_angle(straight, MarkerRow::Mean).value();
    o.require(zero == 0.0, "collinear -> exactly 0");

    const auto arc = testing::arc_points(7, std::numbers::pi);
    const double got = to_deg(polyline_bending_angle(arc, Eigen::Vector3d::UnitZ()));
    o.detail << " arc " << got << " deg;";
    o.require(std::abs(got - 150.0) <= 1e-6, "180 deg arc -> 150 +- 1e-6 deg");

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const auto f = testing::arc_frame(1.1);
    const double base = marker_bending_angle(f, MarkerRow::Mean).value();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto g = testing::transformed(f, testing::random_rotation(rng), Eigen::Vector3d(U(rng), U(rng), U(rng)));
        worst = std::max(worst, std::abs(marker_bending_angle(g, MarkerRow::Mean).value() - base));
    }
    o.detail << " rigid-motion " << worst << " rad";
    o.require(worst <= 1e-9, "rigid-motion invariance 1e-9 rad");
}

void protocol_processing(Outcome& o) {
    testing::StaircaseProfile s;
    for (double p = 0.0; p <= 100.0 + 1e-9; p += 10.0) s.levels_kpa.push_back(p);
    for (double p = 90.0; p >= -1e-9; p -= 10.0) s.levels_kpa.push_back(p);
    s.dwell_s = 5.0;
    s.noise_kpa = 0.3;
    s.theta_of_kpa = [](double p) { return p * std::numbers::pi / 180.0; };
    const auto frames = testing::staircase_log(s);
    const auto plateaus = detect_plateaus(frames);
    o.detail << " " << plateaus.size() << " plateaus for " << s.levels_kpa.size() << " steps;";
    o.require(plateaus.size() == s.levels_kpa.size(), "one plateau per step");
    if (plateaus.size() != s.levels_kpa.size()) return;

    std::vector<std::pair<Pressure, Angle>> pairs;
    for (std::size_t i = 0; i < plateaus.size(); ++i) {
        o.require(std::abs(to_kpa(plateaus[i].mean_pressure) - s.levels_kpa[i]) < 1.0, "plateau level");
        pairs.emplace_back(plateaus[i].mean_pressure, plateaus[i].settled_theta.value_or(Angle{}));
    }
    const auto labeled = split_branches(pairs);
    const std::size_t peak = 10;
    bool ok = labeled.size() == pairs.size();
    for (std::size_t i = 0; ok && i < labeled.size(); ++i)
        ok = labeled[i].branch == (i <= peak ? Branch::Up : Branch::Down) && labeled[i].cycle == 0;
    o.detail << " peak labeled " << to_string(labeled[peak].branch);
    o.require(ok, "Up/Down partition with the peak in Up");
}

} // namespace

int main() {
    report(1, "transition-pressure reproduction", transition_reproduction, 1.0);
    report(2, "zigzag peak angle", zigzag_peak, 5.0);
    report(3, "cross sign rule", cross_sign_rule);
    report(4, "onset pressures", onset_pressures, 10.0);
    report(5, "property suite", property_suite);
    report(6, "calibration round trip", calibration_round_trip, 30.0);
    report(7, "marker metric", marker_metric);
    report(8, "protocol processing", protocol_processing);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
