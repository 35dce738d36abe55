#include "embroidery/experiment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "embroidery/errors.hpp"

namespace embroidery {

namespace {

std::vector<Eigen::Vector3d> row_points(const MarkerFrame& frame, std::size_t first) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(kMarkersPerRow);
    for (std::size_t i = first; i < first + kMarkersPerRow; ++i) {
        if (!frame.markers[i])
            throw std::invalid_argument("marker_bending_angle: marker " + std::to_string(i + 1) + " missing");
        pts.push_back(*frame.markers[i]);
    }
    return pts;
}

Eigen::Vector3d centroid(const std::vector<Eigen::Vector3d>& pts) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (const auto& p : pts) c += p;
    return c / static_cast<double>(pts.size());
}

} // namespace

std::optional<Eigen::Vector3d> lateral_axis(const MarkerFrame& frame) {
    Eigen::Vector3d left = Eigen::Vector3d::Zero();
    Eigen::Vector3d right = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < kMarkersPerRow; ++i) {
        if (!frame.markers[i] || !frame.markers[i + kMarkersPerRow]) return std::nullopt;
        left += *frame.markers[i];
        right += *frame.markers[i + kMarkersPerRow];
    }
    const Eigen::Vector3d axis = (right - left) / static_cast<double>(kMarkersPerRow);
    if (axis.norm() == 0.0) return std::nullopt;
    return axis.normalized();
}

Angle polyline_bending_angle(const std::vector<Eigen::Vector3d>& points, const Eigen::Vector3d& reference_axis) {
    if (points.size() < 3) throw std::invalid_argument("polyline_bending_angle: need at least 3 points");

    std::vector<Eigen::Vector3d> chords;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Eigen::Vector3d v = points[i + 1] - points[i];
        if (v.norm() == 0.0)
            throw std::invalid_argument("polyline_bending_angle: zero-length chord between points " +
                                        std::to_string(i + 1) + " and " + std::to_string(i + 2));
        chords.push_back(v);
    }

    // Least-squares plane: normal is the eigenvector of the scatter matrix
    // with the smallest eigenvalue.
    const Eigen::Vector3d c = centroid(points);
    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto& p : points) scatter += (p - c) * (p - c).transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
    Eigen::Vector3d normal = es.eigenvectors().col(0);
    if (normal.dot(reference_axis) < 0.0) normal = -normal;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < chords.size(); ++i) {
        const Eigen::Vector3d cr = chords[i].cross(chords[i + 1]);
        total += std::atan2(cr.dot(normal), chords[i].dot(chords[i + 1]));
    }
    return Angle{total};
}

Angle marker_bending_angle(const MarkerFrame& frame, MarkerRow row,
                           const std::optional<Eigen::Vector3d>& reference_axis) {
    std::vector<Eigen::Vector3d> left;
    std::vector<Eigen::Vector3d> right;
    if (row != MarkerRow::Right) left = row_points(frame, 0);
    if (row != MarkerRow::Left) right = row_points(frame, kMarkersPerRow);

    std::optional<Eigen::Vector3d> ref = reference_axis;
    if (!ref) {
        // The frame's own axis needs both rows.
        (void)row_points(frame, 0);
        (void)row_points(frame, kMarkersPerRow);
        ref = lateral_axis(frame);
    }
    if (!ref) throw std::invalid_argument("marker_bending_angle: rows coincide, no lateral reference axis");

    switch (row) {
    case MarkerRow::Left: return polyline_bending_angle(left, *ref);
    case MarkerRow::Right: return polyline_bending_angle(right, *ref);
    case MarkerRow::Mean: return 0.5 * (polyline_bending_angle(left, *ref) + polyline_bending_angle(right, *ref));
    }
    return Angle{0.0};
}

void validate_frames(const std::vector<MarkerFrame>& frames) {
    for (std::size_t i = 1; i < frames.size(); ++i)
        if (!(frames[i].time > frames[i - 1].time))
            throw std::invalid_argument("frames: timestamps must be strictly increasing (frame " +
                                        std::to_string(i + 1) + ")");
}

std::vector<Plateau> detect_plateaus(const std::vector<MarkerFrame>& frames, const PlateauOptions& options) {
    if (!(options.dwell_min.value() > 0.0)) throw std::invalid_argument("detect_plateaus: dwell_min must be > 0");
    validate_frames(frames);

    std::optional<Eigen::Vector3d> reference;
    for (const auto& f : frames)
        if ((reference = lateral_axis(f))) break;

    const double tol = options.tolerance.value();
    std::vector<Plateau> out;
    std::size_t start = 0;
    const std::size_t n = frames.size();
    while (start < n) {
        double sum = 0.0;
        double lo = frames[start].pressure.value();
        double hi = lo;
        std::size_t end = start; // inclusive
        sum = lo;
        while (end + 1 < n) {
            const double p = frames[end + 1].pressure.value();
            const double s2 = sum + p;
            const double mean = s2 / static_cast<double>(end + 2 - start);
            const double lo2 = std::min(lo, p);
            const double hi2 = std::max(hi, p);
            if (hi2 - mean > tol || mean - lo2 > tol) break;
            sum = s2;
            lo = lo2;
            hi = hi2;
            ++end;
        }
        if (frames[end].time - frames[start].time >= options.dwell_min.value()) {
            Plateau pl;
            pl.first_frame = start;
            pl.last_frame = end;
            pl.t_start = frames[start].time;
            pl.t_end = frames[end].time;
            pl.mean_pressure = Pressure{sum / static_cast<double>(end + 1 - start)};

            const double settle_from = pl.t_end - (pl.t_end - pl.t_start) / 3.0;
            double theta_sum = 0.0;
            std::size_t theta_n = 0;
            for (std::size_t i = start; i <= end; ++i) {
                if (frames[i].time < settle_from) continue;
                try {
                    theta_sum += marker_bending_angle(frames[i], options.row, reference).value();
                    ++theta_n;
                } catch (const std::invalid_argument&) {
                    // incomplete frame: excluded from the settled mean
                }
            }
            if (theta_n > 0) pl.settled_theta = Angle{theta_sum / static_cast<double>(theta_n)};
            out.push_back(pl);
            start = end + 1;
        } else {
            ++start;
        }
    }
    return out;
}

std::vector<LabeledPair> split_branches(const std::vector<std::pair<Pressure, Angle>>& pairs) {
    std::vector<LabeledPair> out;
    out.reserve(pairs.size());
    Branch current = Branch::Up;
    std::size_t cycle = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) {
            const Pressure prev = pairs[i - 1].first;
            const Pressure cur = pairs[i].first;
            if (cur > prev) {
                if (current == Branch::Down) ++cycle;
                current = Branch::Up;
            } else if (cur < prev) {
                current = Branch::Down;
            }
        }
        out.push_back({pairs[i].first, pairs[i].second, current, cycle});
    }
    return out;
}

} // namespace embroidery
