#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "embroidery/actuator.hpp"

namespace embroidery {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Actuator description in boundary units (mm, kPa, MPa, deg). Every field
/// is optional so a file and command-line flags can be layered.
///
///   [tube]    l0_mm rf_mm df_mm ge_mpa
///   [design]  pattern w_mm alpha_deg stitch_interval_mm orientation_sign
///   [model]   g_mpa p0_kpa beta0_mode
struct ActuatorConfig {
    std::optional<double> l0_mm;
    std::optional<double> rf_mm;
    std::optional<double> df_mm;
    std::optional<double> ge_mpa;

    std::optional<Pattern> pattern;
    std::optional<double> w_mm;
    std::optional<double> alpha_deg;
    std::optional<double> stitch_interval_mm;
    std::optional<int> orientation_sign;

    std::optional<double> g_mpa;
    std::optional<double> p0_kpa;
    std::optional<BraidingMode> beta0_mode;

    /// Fields set in overrides replace ours.
    [[nodiscard]] ActuatorConfig merged_with(const ActuatorConfig& overrides) const;

    [[nodiscard]] bool has_tube_geometry() const { return rf_mm || df_mm || ge_mpa || l0_mm; }
};

/// INI-style text. Unknown sections or keys throw ConfigError naming them.
ActuatorConfig parse_config(std::istream& in);
ActuatorConfig load_config(const std::string& path);

/// Writes an INI document that parse_config reads back to the same config.
std::string to_ini(const ActuatorConfig& config);

/// Tube fields layered over base; pattern fields over the per-pattern defaults.
TubeMaterial tube_from_config(const ActuatorConfig& config, const TubeMaterial& base);
EmbroideryDesign design_from_config(const ActuatorConfig& config);

} // namespace embroidery
