#include "embroidery/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "embroidery/errors.hpp"

namespace embroidery::csv {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_number(const std::string& field, std::size_t row, std::size_t col, const std::string& name) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last)
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) + " (" + name +
                             "): expected a number, got '" + field + "'",
                         row, col);
    return v;
}

void expect_header(const Table& t, const std::vector<std::string>& expected, std::size_t required) {
    if (t.header.size() < required || t.header.size() > expected.size())
        throw ParseError("header: expected columns " + [&] {
            std::string s;
            for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? "," : "") + expected[i];
            return s;
        }(), 1, 0);
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] != expected[i])
            throw ParseError("header column " + std::to_string(i + 1) + ": expected '" + expected[i] + "', got '" +
                                 t.header[i] + "'",
                             1, i + 1);
}

void expect_width(const Table& t, std::size_t r) {
    if (t.rows[r].size() != t.header.size())
        throw ParseError("row " + std::to_string(r + 2) + ": expected " + std::to_string(t.header.size()) +
                             " fields, got " + std::to_string(t.rows[r].size()),
                         r + 2, 0);
}

} // namespace

Table read_table(std::istream& in) {
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!have_header && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        if (!have_header) {
            t.header = split(line);
            have_header = true;
        } else {
            t.rows.push_back(split(line));
        }
    }
    if (!have_header) throw ParseError("empty file: header row is mandatory", 1, 0);
    return t;
}

Table read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_table(in);
}

std::string format_number(double v, int decimals) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) return "nan";
    std::string s(buf, ptr);
    if (s.find_first_not_of("-0.") == std::string::npos) s = decimals > 0 ? "0." + std::string(decimals, '0') : "0";
    return s;
}

std::vector<PressureAnglePair> read_pairs(std::istream& in) {
    const Table t = read_table(in);
    expect_header(t, {"pressure_kpa", "theta_deg", "branch"}, 2);
    std::vector<PressureAnglePair> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        expect_width(t, r);
        const auto& f = t.rows[r];
        PressureAnglePair p;
        p.pressure = kilopascals(parse_number(f[0], r + 2, 1, "pressure_kpa"));
        p.theta = degrees(parse_number(f[1], r + 2, 2, "theta_deg"));
        if (f.size() > 2) {
            if (f[2] == "up")
                p.branch = Branch::Up;
            else if (f[2] == "down")
                p.branch = Branch::Down;
            else
                throw ParseError("row " + std::to_string(r + 2) + ", column 3 (branch): expected up|down, got '" +
                                     f[2] + "'",
                                 r + 2, 3);
        }
        out.push_back(p);
    }
    return out;
}

void write_pairs(std::ostream& out, const std::vector<LabeledPair>& pairs) {
    out << "pressure_kpa,theta_deg,branch\n";
    for (const auto& p : pairs)
        out << format_number(to_kpa(p.pressure), 4) << ',' << format_number(to_deg(p.theta), 6) << ','
            << to_string(p.branch) << '\n';
}

void write_pairs(std::ostream& out, const std::vector<PressureAnglePair>& pairs) {
    out << "pressure_kpa,theta_deg,branch\n";
    for (const auto& p : pairs)
        out << format_number(to_kpa(p.pressure), 4) << ',' << format_number(to_deg(p.theta), 6) << ','
            << to_string(p.branch) << '\n';
}

std::vector<TransitionTarget> read_transition_targets(std::istream& in) {
    const Table t = read_table(in);
    expect_header(t, {"w_mm", "p0_kpa"}, 2);
    std::vector<TransitionTarget> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        expect_width(t, r);
        out.push_back({millimeters(parse_number(t.rows[r][0], r + 2, 1, "w_mm")),
                       kilopascals(parse_number(t.rows[r][1], r + 2, 2, "p0_kpa"))});
    }
    return out;
}

void write_curve(std::ostream& out, const PressureAngleCurve& curve) {
    out << "pressure_kpa,theta_deg,l_mm,r_mm,status\n";
    for (const auto& s : curve.samples) {
        out << format_number(to_kpa(s.pressure), 4) << ',';
        if (s.ok)
            out << format_number(to_deg(s.theta), 6) << ',' << format_number(to_mm(s.length), 6) << ','
                << format_number(to_mm(s.radius), 6);
        else
            out << ",,";
        out << ',' << s.status << '\n';
    }
}

std::vector<std::string> mocap_header() {
    std::vector<std::string> h{"t"};
    for (std::size_t i = 1; i <= kMarkerCount; ++i) {
        h.push_back("px" + std::to_string(i));
        h.push_back("py" + std::to_string(i));
        h.push_back("pz" + std::to_string(i));
    }
    h.push_back("pressure_kpa");
    return h;
}

std::vector<MarkerFrame> read_mocap(std::istream& in) {
    const Table t = read_table(in);
    const std::vector<std::string> expected = mocap_header();
    expect_header(t, expected, expected.size());
    std::vector<MarkerFrame> frames;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        expect_width(t, r);
        const auto& f = t.rows[r];
        const std::size_t row = r + 2;
        MarkerFrame fr;
        fr.time = parse_number(f[0], row, 1, "t");
        for (std::size_t m = 0; m < kMarkerCount; ++m) {
            const std::size_t c = 1 + 3 * m;
            const bool empty0 = f[c].empty();
            if (empty0 != f[c + 1].empty() || empty0 != f[c + 2].empty())
                throw ParseError("row " + std::to_string(row) + ", marker " + std::to_string(m + 1) +
                                     ": coordinates must be all present or all empty",
                                 row, c + 1);
            if (empty0) continue;
            fr.markers[m] = Eigen::Vector3d{parse_number(f[c], row, c + 1, expected[c]) * 1e-3,
                                            parse_number(f[c + 1], row, c + 2, expected[c + 1]) * 1e-3,
                                            parse_number(f[c + 2], row, c + 3, expected[c + 2]) * 1e-3};
        }
        fr.pressure = kilopascals(parse_number(f.back(), row, f.size(), "pressure_kpa"));
        if (!frames.empty() && !(fr.time > frames.back().time))
            throw ParseError("row " + std::to_string(row) + ", column 1 (t): timestamps must be strictly increasing",
                             row, 1);
        frames.push_back(fr);
    }
    return frames;
}

void write_mocap(std::ostream& out, const std::vector<MarkerFrame>& frames) {
    const auto header = mocap_header();
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& fr : frames) {
        out << format_number(fr.time, 6);
        for (const auto& m : fr.markers) {
            if (m)
                out << ',' << format_number((*m)(0) * 1e3, 9) << ',' << format_number((*m)(1) * 1e3, 9) << ','
                    << format_number((*m)(2) * 1e3, 9);
            else
                out << ",,,";
        }
        out << ',' << format_number(to_kpa(fr.pressure), 6) << '\n';
    }
}

} // namespace embroidery::csv
