#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Core>

#include "embroidery/actuator.hpp"
#include "embroidery/errors.hpp"
#include "embroidery/units.hpp"
#include "oracles.hpp"

using namespace embroidery;
using namespace embroidery::literals;

TEST_SUITE("actuator") {

TEST_CASE("unit constructors and converters are inverse at the boundary") {
    CHECK(to_mm(millimeters(2.5)) == doctest::Approx(2.5));
    CHECK(to_kpa(kilopascals(85.0)) == doctest::Approx(85.0));
    CHECK(to_mpa(megapascals(2.7)) == doctest::Approx(2.7));
    CHECK(to_deg(degrees(45.0)) == doctest::Approx(45.0));
    CHECK((7.0_mm).value() == doctest::Approx(7e-3));
    CHECK((300_kPa).value() == doctest::Approx(3e5));
    CHECK(10_mm / 5_mm == doctest::Approx(2.0));
    CHECK(3_mm < 4_mm);
}

TEST_CASE("sleeve radius of the triangle perimeter") {
    // Perimeter of an isosceles triangle with base w and height 2 r_f.
    auto oracle = [](double w, double rf) {
        const Eigen::Vector2d apex(0.0, 2.0 * rf);
        const Eigen::Vector2d left(-w / 2, 0.0), right(w / 2, 0.0);
        return ((apex - left).norm() + (apex - right).norm() + (right - left).norm()) / (2.0 * std::numbers::pi);
    };
    CHECK(to_mm(sleeve_radius(0_mm, 1_mm)) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(to_mm(sleeve_radius(7_mm, 1_mm)) == doctest::Approx(2.397).epsilon(5e-4));
    CHECK(to_mm(sleeve_radius(7_mm, 1_mm)) == doctest::Approx(oracle(7.0, 1.0)).epsilon(1e-12));
    CHECK(sleeve_radius(9_mm, 1_mm) > sleeve_radius(7_mm, 1_mm));
    CHECK_THROWS_AS(sleeve_radius(millimeters(-1.0), 1_mm), DomainError);
}

TEST_CASE("sleeve radius is strictly increasing in w and r_f") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double w = U(rng), rf = U(rng) / 4, dw = 1e-3 * U(rng);
        CHECK(sleeve_radius(millimeters(w + dw), millimeters(rf)) > sleeve_radius(millimeters(w), millimeters(rf)));
        CHECK(sleeve_radius(millimeters(w), millimeters(rf + dw)) > sleeve_radius(millimeters(w), millimeters(rf)));
    }
}

TEST_CASE("braiding angle in verbatim millimetre form") {
    const double expected = std::asin(7.0 / 28.5) * 180.0 / std::numbers::pi;
    CHECK(to_deg(braiding_angle0(7_mm, 45_deg, 1_mm, BraidingMode::VerbatimMm)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(to_deg(braiding_angle0(7_mm, 45_deg, 1_mm, BraidingMode::VerbatimMm)) == doctest::Approx(14.22).epsilon(5e-4));
    CHECK(to_deg(braiding_angle0(7_mm, degrees(1e-9), 1_mm, BraidingMode::VerbatimMm)) < 1e-6);
}

TEST_CASE("sqrt-corrected braiding angle reports the bad arcsin argument") {
    try {
        (void)braiding_angle0(7_mm, 45_deg, 1_mm, BraidingMode::SqrtCorrected);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1.311") != std::string::npos);
        CHECK(msg.find("sqrt-corrected") != std::string::npos);
    }
}

TEST_CASE("geometric braiding angle equals the thread-leg inclination") {
    // Leg spans the triangle side (w/2 across, 2 r_f up) and advances (w/2) tan(alpha) axially.
    for (double rf : {0.8, 1.0, 1.58}) {
        for (double a : {5.0, 15.0, 30.0, 45.0, 60.0, 80.0}) {
            const double w = 7.0;
            const Eigen::Vector3d leg(w / 2, 2 * rf, w / 2 * std::tan(a * std::numbers::pi / 180));
            const double expected = std::asin(leg.z() / leg.norm());
            const double got = braiding_angle0(millimeters(w), degrees(a), millimeters(rf)).value();
            CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("geometric braiding angle is strictly increasing in alpha0") {
    double prev = 0.0;
    for (double a = 1.0; a < 89.5; a += 0.5) {
        const double b = braiding_angle0(7_mm, degrees(a), 1_mm).value();
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("verbatim braiding angle rises up to the peak of its argument") {
    // The argument w t / (c + (w^2/4) t^2) peaks at t* = sqrt(c) / (w/2).
    const double w = 7.0, rf = 1.0;
    const double c = 4 * rf * rf + w * w / 4;
    const double a_peak = std::atan(std::sqrt(c) / (w / 2)) * 180.0 / std::numbers::pi;
    double prev = 0.0;
    for (double a = 0.5; a < a_peak; a += 0.5) {
        const double b = braiding_angle0(millimeters(w), degrees(a), millimeters(rf), BraidingMode::VerbatimMm).value();
        CHECK(b > prev);
        prev = b;
    }
    const auto at = [&](double a) {
        return braiding_angle0(millimeters(w), degrees(a), millimeters(rf), BraidingMode::VerbatimMm).value();
    };
    CHECK(at(a_peak + 10.0) < at(a_peak));
}

TEST_CASE("inner radius from wall incompressibility") {
    TubeMaterial tube;
    const Length r0 = sleeve_radius(7_mm, 1_mm);
    CHECK(to_mm(inner_radius(r0, tube.rest_length, tube)) == doctest::Approx(std::sqrt(5.7456 - 0.75)).epsilon(2e-4));
    CHECK(to_mm(inner_radius(r0, tube.rest_length, tube)) == doctest::Approx(2.235).epsilon(5e-4));
    CHECK(inner_radius(tube.outer_radius, tube.rest_length, tube).value() ==
          doctest::Approx(tube.inner_radius.value()).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(inner_radius(millimeters(0.5), tube.rest_length, tube),
                         doctest::Contains("wall thicker than tube"), DomainError);
}

TEST_CASE("wall conservation identity holds to 1e-12") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> L(0.5, 1.8), R(1.0, 4.0);
    TubeMaterial tube;
    const double wall = tube.wall_area_factor();
    for (int i = 0; i < 500; ++i) {
        const Length l = L(rng) * tube.rest_length;
        const Length r = R(rng) * tube.outer_radius;
        const double lambda_m = (l.value() + tube.rest_length.value()) / (2.0 * tube.rest_length.value());
        Length d{};
        try {
            d = inner_radius(r, l, tube);
        } catch (const DomainError&) {
            continue;
        }
        const double lhs = (r.value() * r.value() - d.value() * d.value()) * lambda_m;
        CHECK(std::abs(lhs - wall) <= 1e-12 * wall);
    }
}

TEST_CASE("internal volume of the deformed lumen") {
    CHECK(internal_volume(100_mm, millimeters(2.235), 100_mm).value() * 1e9 == doctest::Approx(1569.2).epsilon(1e-4));
    CHECK(internal_volume(100_mm, 0_mm, 100_mm).value() == 0.0);
}

TEST_CASE("validation rejects inconsistent inputs") {
    TubeMaterial t;
    t.inner_radius = millimeters(1.2);
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    EmbroideryDesign d = EmbroideryDesign::cross(7_mm, 95_deg);
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d = EmbroideryDesign::zigzag(7_mm);
    d.orientation_sign = 0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_actuator_model(TubeMaterial{}, EmbroideryDesign::zigzag(7_mm), pascals(0.0)),
                    std::invalid_argument);
}

TEST_CASE("model construction derives r0 and P0 and records the mode") {
    const auto m = make_actuator_model(TubeMaterial{}, EmbroideryDesign::cross(7_mm, 45_deg), 1.3_MPa,
                                       {BraidingMode::VerbatimMm, false, {}});
    CHECK(m.sleeve_radius.value() == doctest::Approx(sleeve_radius(7_mm, 1_mm).value()));
    CHECK(m.transition_source == TransitionSource::Derived);
    CHECK(m.transition_pressure.value() > 0.0);
    CHECK(to_deg(m.braiding_angle0) == doctest::Approx(14.22).epsilon(5e-4));
    CHECK(m.braiding_mode == BraidingMode::VerbatimMm);

    const auto g = make_actuator_model(TubeMaterial{}, EmbroideryDesign::zigzag(7_mm), 2.7_MPa, {BraidingMode::Geometric, true, 85_kPa});
    CHECK(g.transition_source == TransitionSource::Given);
    CHECK(to_kpa(g.transition_pressure) == doctest::Approx(85.0));
}

TEST_CASE("names round trip") {
    for (auto p : {Pattern::Zigzag, Pattern::Cross}) CHECK(parse_pattern(to_string(p)) == p);
    for (auto m : {BraidingMode::Geometric, BraidingMode::VerbatimMm, BraidingMode::SqrtCorrected})
        CHECK(parse_braiding_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_pattern("spiral"), std::invalid_argument);
}

TEST_CASE("operations are bit-identical across calls") {
    TubeMaterial tube;
    const Length r = millimeters(2.1);
    CHECK(inner_radius(r, 97_mm, tube).value() == inner_radius(r, 97_mm, tube).value());
    CHECK(braiding_angle0(7_mm, 33_deg, 1_mm).value() == braiding_angle0(7_mm, 33_deg, 1_mm).value());
}

}
