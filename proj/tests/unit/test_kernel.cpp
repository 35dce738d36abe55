#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "embroidery/actuator.hpp"
#include "embroidery/dual.hpp"
#include "embroidery/strain_energy_kernel.hpp"
#include "oracles.hpp"

using namespace embroidery;
using namespace embroidery::literals;

namespace {

kernel::Geometry geometry(const TubeMaterial& t, Length r0) {
    return {t.rest_length.value(), r0.value(), t.wall_area_factor()};
}

} // namespace

TEST_SUITE("kernel") {

TEST_CASE("inverse root difference: stable form equals the literal one away from B = 0") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> A(0.8, 1.3), r(2e-3, 3e-3), frac(0.5, 0.95), B(0.5, 40.0);
    for (int i = 0; i < 200; ++i) {
        const double a = A(rng), rr = r(rng), b = B(rng);
        const double dd = frac(rng) * rr;
        const double stable = kernel::inverse_root_difference(a, b, rr * rr, dd * dd);
        const double literal = kernel::inverse_root_difference_literal(a, b, rr * rr, dd * dd);
        CHECK(stable == doctest::Approx(literal).epsilon(1e-7));
    }
}

TEST_CASE("inverse root difference: stable form matches the small-B series") {
    const double a = 1.02, rr = 2.4e-3, dd = 2.2e-3;
    for (double b : {0.0, 1e-6, 1e-3, 1e-1, 1.0}) {
        const double stable = kernel::inverse_root_difference(a, b, rr * rr, dd * dd);
        const double series = kernel::inverse_root_difference_series(a, b, rr * rr, dd * dd);
        // Truncation error of the series is O(B^4 r^8); far below 1e-12 relative here.
        CHECK(stable == doctest::Approx(series).epsilon(1e-12));
    }
}

TEST_CASE("strain energy matches brute-force quadrature of the density") {
    const TubeMaterial tube;
    const Length r0 = sleeve_radius(7_mm, tube.outer_radius);
    const auto g = geometry(tube, r0);
    const double G = 2.7e6, l0 = g.rest_length;

    // Zigzag closure (r = r0) at l = 1.05 l0.
    {
        const double l = 1.05 * l0, r = r0.value();
        const double closed = kernel::strain_energy(l, r, G, g);
        const double quad = testing::strain_energy_quadrature(l, r, r0.value(), l0, tube.outer_radius.value(),
                                                              tube.inner_radius.value(), G);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
    }
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> L(0.8, 1.25), R(0.9, 1.15);
    for (int i = 0; i < 20; ++i) {
        const double l = L(rng) * l0, r = R(rng) * r0.value();
        const double closed = kernel::strain_energy(l, r, G, g);
        const double quad = testing::strain_energy_quadrature(l, r, r0.value(), l0, tube.outer_radius.value(),
                                                              tube.inner_radius.value(), G);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
    }
}

TEST_CASE("dual derivative equals a high-order difference of the kernel") {
    const TubeMaterial tube;
    const Length r0 = sleeve_radius(7_mm, tube.outer_radius);
    const auto g = geometry(tube, r0);
    const double G = 1e6, l0 = g.rest_length, r = r0.value();
    for (double f : {0.9, 0.97, 1.03, 1.2}) {
        const double l = f * l0;
        const Dual e = kernel::strain_energy(Dual::variable(l), Dual(r), G, g);
        const double h = 1e-6 * l0;
        auto E = [&](double x) { return kernel::strain_energy(x, r, G, g); };
        const double fd = (-E(l + 2 * h) + 8 * E(l + h) - 8 * E(l - h) + E(l - 2 * h)) / (12 * h);
        CHECK(derivative_of(e) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(value_of(e) == E(l));
    }
}

TEST_CASE("internal volume kernel agrees with the actuator-level volume") {
    const TubeMaterial tube;
    const Length r0 = sleeve_radius(7_mm, tube.outer_radius);
    const auto g = geometry(tube, r0);
    const double l = 1.07 * g.rest_length;
    const Length d = inner_radius(r0, Length{l}, tube);
    CHECK(kernel::internal_volume(l, r0.value(), g) ==
          doctest::Approx(internal_volume(Length{l}, d, tube.rest_length).value()).epsilon(1e-13));
}

TEST_CASE("pantograph radius preserves the braid-leg length") {
    // A thread leg of length l0 / sin(b0) makes angle b with the hoop direction:
    // axial l = L sin b, and the hoop projection scales the radius with cos b.
    const double l0 = 0.1, r0 = 2.4e-3, b0 = 0.4;
    const kernel::Geometry g{l0, r0, 0.0};
    const double leg = l0 / std::sin(b0);
    for (double l : {0.5 * l0, 0.9 * l0, l0, 1.1 * l0, 1.5 * l0}) {
        const double b = std::asin(l / leg);
        const double r = kernel::pantograph_radius(l, std::sin(b0), std::cos(b0), g);
        CHECK(r == doctest::Approx(r0 * std::cos(b) / std::cos(b0)).epsilon(1e-14));
        CHECK(r / r0 == doctest::Approx(std::cos(b) / std::cos(b0)).epsilon(1e-14));
    }
}

}
