#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "embroidery/calibration.hpp"
#include "embroidery/curve.hpp"
#include "embroidery/experiment.hpp"

namespace embroidery::csv {

// All files: comma separated, mandatory header, '.' decimal separator.
// Units at this boundary are kPa, mm and degrees. Errors are ParseError
// with 1-based row (header = row 1) and column.

/// Plain table: header plus rows of raw string fields.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table read_table(std::istream& in);
Table read_table_file(const std::string& path);

/// Fixed-precision decimal used by every writer (deterministic across runs).
std::string format_number(double v, int decimals = 6);

/// pressure_kpa,theta_deg,branch  (branch column optional on input; default up)
std::vector<PressureAnglePair> read_pairs(std::istream& in);
void write_pairs(std::ostream& out, const std::vector<LabeledPair>& pairs);
void write_pairs(std::ostream& out, const std::vector<PressureAnglePair>& pairs);

/// w_mm,p0_kpa
std::vector<TransitionTarget> read_transition_targets(std::istream& in);

/// pressure_kpa,theta_deg,l_mm,r_mm,status
void write_curve(std::ostream& out, const PressureAngleCurve& curve);

/// t,px1,py1,pz1,...,px14,py14,pz14,pressure_kpa  (positions in mm, empty = missing)
std::vector<MarkerFrame> read_mocap(std::istream& in);
void write_mocap(std::ostream& out, const std::vector<MarkerFrame>& frames);
std::vector<std::string> mocap_header();

} // namespace embroidery::csv
