#include "embroidery/inflation.hpp"

#include <cmath>

#include "embroidery/errors.hpp"

namespace embroidery {

Pressure inflation_pressure(Length radius, const TubeMaterial& tube) {
    const double r = radius.value();
    const double rf = tube.outer_radius.value();
    if (!(r >= rf)) throw DomainError("inflation_pressure: radius below rest outer radius r_f");
    // (s - 1/s)^2 == s^2 + 1/s^2 - 2, without the cancellation near s = 1.
    const double s = r / rf;
    const double k = s - 1.0 / s;
    return Pressure{0.5 * tube.rubber_shear_modulus.value() * k * k};
}

Length radius_at_pressure(Pressure pressure, const TubeMaterial& tube) {
    const double p = pressure.value();
    if (!(p >= 0.0)) throw DomainError("radius_at_pressure: pressure must be >= 0");
    const double rf = tube.outer_radius.value();
    if (p == 0.0) return tube.outer_radius;

    double lo = rf;
    double hi = 2.0 * rf;
    while (inflation_pressure(Length{hi}, tube).value() < p) {
        lo = hi;
        hi *= 2.0;
    }
    // Bisect down to the float grid (well below 1e-12 m for mm-scale radii)
    // so the round trip is limited by rounding only.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (inflation_pressure(Length{mid}, tube).value() < p)
            lo = mid;
        else
            hi = mid;
    }
    const double plo = std::abs(inflation_pressure(Length{lo}, tube).value() - p);
    const double phi = std::abs(inflation_pressure(Length{hi}, tube).value() - p);
    return Length{plo <= phi ? lo : hi};
}

Transition transition_pressure(const TubeMaterial& tube, const EmbroideryDesign& design) {
    const Length r0 = sleeve_radius(design.width, tube.outer_radius);
    if (r0 <= tube.outer_radius) return {Pressure{0.0}, r0};
    return {inflation_pressure(r0, tube), r0};
}

} // namespace embroidery
