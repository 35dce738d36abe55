#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "embroidery/curve.hpp"
#include "embroidery/units.hpp"

namespace embroidery {

inline constexpr std::size_t kMarkersPerRow = 7;
inline constexpr std::size_t kMarkerCount = 2 * kMarkersPerRow;

/// One motion-capture sample. Markers are row-major: indices 0..6 are the
/// left row, 7..13 the right row, each ordered along the actuator. Missing
/// markers are empty, never zero-filled.
struct MarkerFrame {
    double time{0.0}; // s
    std::array<std::optional<Eigen::Vector3d>, kMarkerCount> markers{};
    Pressure pressure;
};

enum class MarkerRow { Left, Right, Mean };

/// Sum of the five signed turning angles between consecutive chords of a
/// marker row. The sign is taken about the normal of the row's least-squares
/// plane, oriented to agree with reference_axis. Without a reference the
/// frame's own left-to-right axis is used (mean right row minus mean left row).
Angle marker_bending_angle(const MarkerFrame& frame, MarkerRow row,
                           const std::optional<Eigen::Vector3d>& reference_axis = std::nullopt);

/// Turning-angle sum for an arbitrary ordered polyline (>= 3 points).
Angle polyline_bending_angle(const std::vector<Eigen::Vector3d>& points, const Eigen::Vector3d& reference_axis);

/// Left-to-right axis of a frame; requires every marker.
std::optional<Eigen::Vector3d> lateral_axis(const MarkerFrame& frame);

struct Plateau {
    double t_start{0.0};
    double t_end{0.0};
    std::size_t first_frame{0};
    std::size_t last_frame{0}; // inclusive
    Pressure mean_pressure;
    std::optional<Angle> settled_theta; // mean over the final third of the window
};

struct PlateauOptions {
    Duration dwell_min{seconds(3.0)};
    Pressure tolerance{kilopascals(2.0)};
    MarkerRow row{MarkerRow::Mean};
};

/// Maximal windows whose pressures all stay within +-tolerance of the window
/// mean for at least dwell_min. Sign reference for the angles is taken from
/// the first frame with a complete marker set.
std::vector<Plateau> detect_plateaus(const std::vector<MarkerFrame>& frames, const PlateauOptions& options = {});

struct LabeledPair {
    Pressure pressure;
    Angle theta;
    Branch branch;
    std::size_t cycle{0}; // 0-based pressurisation cycle
};

/// Up while pressure is nondecreasing, Down while it falls; a rise after a
/// fall opens the next cycle. Equal consecutive pressures keep the current label.
std::vector<LabeledPair> split_branches(const std::vector<std::pair<Pressure, Angle>>& pairs);

/// Validates 14 markers/frame bookkeeping and strictly increasing time.
void validate_frames(const std::vector<MarkerFrame>& frames);

} // namespace embroidery
