#pragma once

#include <cmath>

namespace embroidery {

/// Forward-mode dual number: value plus one directional derivative.
struct Dual {
    double v{0.0};
    double d{0.0};

    constexpr Dual() = default;
    constexpr Dual(double value) : v{value} {} // NOLINT(google-explicit-constructor)
    constexpr Dual(double value, double derivative) : v{value}, d{derivative} {}

    static constexpr Dual variable(double value) { return {value, 1.0}; }
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
constexpr Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
constexpr Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
constexpr Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
constexpr Dual operator-(Dual a, double b) { return {a.v - b, a.d}; }
constexpr Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
constexpr Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
constexpr Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
constexpr Dual operator/(Dual a, double b) { return {a.v / b, a.d / b}; }
constexpr Dual operator/(double a, Dual b) { return {a / b.v, -a * b.d / (b.v * b.v)}; }

inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }
inline double derivative_of(Dual x) { return x.d; }

} // namespace embroidery
