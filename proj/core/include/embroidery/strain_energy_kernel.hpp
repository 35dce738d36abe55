#pragma once

// Scalar kernels of the deformation phase, generic over double and Dual so
// energy, volume and their derivatives along l share one code path.

#include <cmath>
#include <numbers>

namespace embroidery::kernel {

/// Geometric parameters needed by the kernels, all in SI.
struct Geometry {
    double rest_length;   // l0
    double sleeve_radius; // r0
    double wall_factor;   // r_f^2 - d_f^2
};

/// Mean axial stretch A = lambda_m = (l + l0) / (2 l0).
template <class T>
T mean_stretch(const T& l, double l0) {
    return (l + l0) / (2.0 * l0);
}

/// Bending stretch gradient B = (l - l0) / (2 r l0).
template <class T>
T stretch_gradient(const T& l, const T& r, double l0) {
    return (l - l0) / (2.0 * r * l0);
}

/// d^2 = r^2 - (r_f^2 - d_f^2) / lambda_m.
template <class T>
T inner_radius_sq(const T& l, const T& r, const Geometry& g) {
    return r * r - g.wall_factor / mean_stretch(l, g.rest_length);
}

/// (2A / B^2) ((A^2 - B^2 r^2)^(-1/2) - (A^2 - B^2 d^2)^(-1/2)), rewritten as
/// 2A (r^2 - d^2) / (u v (u + v)) with u = sqrt(A^2 - B^2 d^2),
/// v = sqrt(A^2 - B^2 r^2). The two forms are identical for B != 0; this
/// one has no 0/0 at B = 0 and no cancellation near it.
template <class T>
T inverse_root_difference(const T& A, const T& B, const T& r2, const T& d2) {
    using std::sqrt;
    const T u = sqrt(A * A - B * B * d2);
    const T v = sqrt(A * A - B * B * r2);
    return 2.0 * A * (r2 - d2) / (u * v * (u + v));
}

/// The same term evaluated literally. Singular at B = 0.
inline double inverse_root_difference_literal(double A, double B, double r2, double d2) {
    return 2.0 * A / (B * B) *
           (1.0 / std::sqrt(A * A - B * B * r2) - 1.0 / std::sqrt(A * A - B * B * d2));
}

/// Second-order expansion of the same term in B about 0.
inline double inverse_root_difference_series(double A, double B, double r2, double d2) {
    const double A2 = A * A;
    return (r2 - d2) / A2 + 0.75 * B * B * (r2 * r2 - d2 * d2) / (A2 * A2);
}

/// Neo-Hookean strain energy of the tube wall (rho in [d, r], phi in [0, 2 pi),
/// axial extent l0) for axial stretch lambda_1 = A + B rho sin(phi),
/// hoop stretch r / r0 and radial stretch from incompressibility:
///
///   E_s = pi G l0 / 2 * ( (A^2 + r^2/r0^2 - 3)(r^2 - d^2) + B^2 (r^4 - d^4) / 4
///                         + (r0^2 / r^2) * inverse_root_difference )
template <class T>
T strain_energy(const T& l, const T& r, double shear_modulus, const Geometry& g) {
    const double l0 = g.rest_length;
    const T A = mean_stretch(l, l0);
    const T B = stretch_gradient(l, r, l0);
    const T r2 = r * r;
    // r^2 - d^2 is exactly wall_factor / A; use that instead of subtracting.
    const T wall = g.wall_factor / A;
    const T d2 = r2 - wall;
    const double r0sq = g.sleeve_radius * g.sleeve_radius;
    const T bracket = (A * A + r2 / r0sq - 3.0) * wall + 0.25 * B * B * wall * (r2 + d2) +
                      (r0sq / r2) * inverse_root_difference(A, B, r2, d2);
    return 0.5 * std::numbers::pi * shear_modulus * l0 * bracket;
}

/// V_i = ((l + l0) / 2) pi d^2.
template <class T>
T internal_volume(const T& l, const T& r, const Geometry& g) {
    return 0.5 * (l + g.rest_length) * std::numbers::pi * inner_radius_sq(l, r, g);
}

/// Pantograph radius r = r0 cos(beta) / cos(beta0), sin(beta) = (l / l0) sin(beta0).
template <class T>
T pantograph_radius(const T& l, double sin_beta0, double cos_beta0, const Geometry& g) {
    using std::sqrt;
    const T s = l / g.rest_length * sin_beta0;
    return g.sleeve_radius * sqrt(1.0 - s * s) / cos_beta0;
}

} // namespace embroidery::kernel
