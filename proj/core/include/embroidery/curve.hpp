#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "embroidery/actuator.hpp"

namespace embroidery {

enum class Branch { Up, Down };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view s);

/// One (pressure, bending angle) observation or prediction.
struct PressureAnglePair {
    Pressure pressure;
    Angle theta;
    Branch branch{Branch::Up};
};

struct CurveSample {
    Pressure pressure;
    Angle theta;  // reported sign convention
    Length length;
    Length radius;
    bool ok{true};
    std::string status{"ok"};
};

/// Everything needed to reproduce a curve, carried alongside the samples.
struct CurveMetadata {
    ActuatorModel model;
    Pressure max_pressure;
    Pressure step;
    std::size_t failed_samples{0};
};

struct PressureAngleCurve {
    std::vector<CurveSample> samples; // pressure-ascending
    CurveMetadata metadata;

    [[nodiscard]] bool all_ok() const { return metadata.failed_samples == 0; }
};

} // namespace embroidery
