#pragma once

#include <compare>
#include <numbers>

namespace embroidery {

/// SI scalar tagged with its physical dimension. Arithmetic is limited to
/// what keeps the dimension unchanged; anything else goes through value().
template <class Tag>
class Quantity {
  public:
    constexpr Quantity() = default;
    constexpr explicit Quantity(double si_value) : value_{si_value} {}

    [[nodiscard]] constexpr double value() const noexcept { return value_; }

    constexpr auto operator<=>(const Quantity&) const = default;

    constexpr Quantity operator-() const { return Quantity{-value_}; }
    constexpr Quantity& operator+=(Quantity o) { value_ += o.value_; return *this; }
    constexpr Quantity& operator-=(Quantity o) { value_ -= o.value_; return *this; }

    friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity{a.value_ + b.value_}; }
    friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity{a.value_ - b.value_}; }
    friend constexpr Quantity operator*(double s, Quantity q) { return Quantity{s * q.value_}; }
    friend constexpr Quantity operator*(Quantity q, double s) { return Quantity{s * q.value_}; }
    friend constexpr Quantity operator/(Quantity q, double s) { return Quantity{q.value_ / s}; }
    friend constexpr double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }

  private:
    double value_{0.0};
};

struct LengthTag {};
struct PressureTag {};
struct AngleTag {};
struct EnergyTag {};
struct ForceTag {};
struct VolumeTag {};
struct DurationTag {};

using Length = Quantity<LengthTag>;     // m
using Pressure = Quantity<PressureTag>; // Pa (also used for shear moduli)
using Angle = Quantity<AngleTag>;       // rad
using Energy = Quantity<EnergyTag>;     // J
using Force = Quantity<ForceTag>;       // N
using Volume = Quantity<VolumeTag>;     // m^3
using Duration = Quantity<DurationTag>; // s

// Boundary conversions. Files and the command line speak mm / kPa / MPa / deg.
constexpr Length meters(double v) { return Length{v}; }
constexpr Length millimeters(double v) { return Length{v * 1e-3}; }
constexpr Pressure pascals(double v) { return Pressure{v}; }
constexpr Pressure kilopascals(double v) { return Pressure{v * 1e3}; }
constexpr Pressure megapascals(double v) { return Pressure{v * 1e6}; }
constexpr Angle radians(double v) { return Angle{v}; }
constexpr Angle degrees(double v) { return Angle{v * std::numbers::pi / 180.0}; }
constexpr Duration seconds(double v) { return Duration{v}; }

constexpr double to_mm(Length l) { return l.value() * 1e3; }
constexpr double to_kpa(Pressure p) { return p.value() * 1e-3; }
constexpr double to_mpa(Pressure p) { return p.value() * 1e-6; }
constexpr double to_deg(Angle a) { return a.value() * 180.0 / std::numbers::pi; }

namespace literals {
constexpr Length operator""_mm(long double v) { return millimeters(static_cast<double>(v)); }
constexpr Length operator""_mm(unsigned long long v) { return millimeters(static_cast<double>(v)); }
constexpr Pressure operator""_kPa(long double v) { return kilopascals(static_cast<double>(v)); }
constexpr Pressure operator""_kPa(unsigned long long v) { return kilopascals(static_cast<double>(v)); }
constexpr Pressure operator""_MPa(long double v) { return megapascals(static_cast<double>(v)); }
constexpr Pressure operator""_MPa(unsigned long long v) { return megapascals(static_cast<double>(v)); }
constexpr Angle operator""_deg(long double v) { return degrees(static_cast<double>(v)); }
constexpr Angle operator""_deg(unsigned long long v) { return degrees(static_cast<double>(v)); }
} // namespace literals

} // namespace embroidery
