#include "embroidery/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace embroidery {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
    return v;
}

template <class T>
void put(std::ostringstream& os, const char* key, const std::optional<T>& v) {
    if (v) os << key << " = " << *v << '\n';
}

} // namespace

ActuatorConfig ActuatorConfig::merged_with(const ActuatorConfig& o) const {
    ActuatorConfig m = *this;
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(m.l0_mm, o.l0_mm);
    take(m.rf_mm, o.rf_mm);
    take(m.df_mm, o.df_mm);
    take(m.ge_mpa, o.ge_mpa);
    take(m.pattern, o.pattern);
    take(m.w_mm, o.w_mm);
    take(m.alpha_deg, o.alpha_deg);
    take(m.stitch_interval_mm, o.stitch_interval_mm);
    take(m.orientation_sign, o.orientation_sign);
    take(m.g_mpa, o.g_mpa);
    take(m.p0_kpa, o.p0_kpa);
    take(m.beta0_mode, o.beta0_mode);
    return m;
}

ActuatorConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    ActuatorConfig c;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError("config key '" + section + "' must live inside a [tube], [design] or [model] section");
        for (const auto& [key, node] : body) {
            const std::string name = section + "." + key;
            const std::string value = node.get_value<std::string>();
            try {
                if (section == "tube") {
                    if (key == "l0_mm") c.l0_mm = to_double(name, value);
                    else if (key == "rf_mm") c.rf_mm = to_double(name, value);
                    else if (key == "df_mm") c.df_mm = to_double(name, value);
                    else if (key == "ge_mpa") c.ge_mpa = to_double(name, value);
                    else throw ConfigError("unknown config key '" + name + "'");
                } else if (section == "design") {
                    if (key == "pattern") c.pattern = parse_pattern(value);
                    else if (key == "w_mm") c.w_mm = to_double(name, value);
                    else if (key == "alpha_deg") c.alpha_deg = to_double(name, value);
                    else if (key == "stitch_interval_mm") c.stitch_interval_mm = to_double(name, value);
                    else if (key == "orientation_sign") c.orientation_sign = to_int(name, value);
                    else throw ConfigError("unknown config key '" + name + "'");
                } else if (section == "model") {
                    if (key == "g_mpa") c.g_mpa = to_double(name, value);
                    else if (key == "p0_kpa") c.p0_kpa = to_double(name, value);
                    else if (key == "beta0_mode") c.beta0_mode = parse_braiding_mode(value);
                    else throw ConfigError("unknown config key '" + name + "'");
                } else {
                    throw ConfigError("unknown config section '[" + section + "]'");
                }
            } catch (const ConfigError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw ConfigError("config key '" + name + "': " + e.what());
            }
        }
    }
    return c;
}

ActuatorConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string to_ini(const ActuatorConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "[tube]\n";
    put(os, "l0_mm", c.l0_mm);
    put(os, "rf_mm", c.rf_mm);
    put(os, "df_mm", c.df_mm);
    put(os, "ge_mpa", c.ge_mpa);
    os << "\n[design]\n";
    if (c.pattern) os << "pattern = " << to_string(*c.pattern) << '\n';
    put(os, "w_mm", c.w_mm);
    put(os, "alpha_deg", c.alpha_deg);
    put(os, "stitch_interval_mm", c.stitch_interval_mm);
    put(os, "orientation_sign", c.orientation_sign);
    os << "\n[model]\n";
    put(os, "g_mpa", c.g_mpa);
    put(os, "p0_kpa", c.p0_kpa);
    if (c.beta0_mode) os << "beta0_mode = " << to_string(*c.beta0_mode) << '\n';
    return os.str();
}

TubeMaterial tube_from_config(const ActuatorConfig& c, const TubeMaterial& base) {
    TubeMaterial t = base;
    if (c.l0_mm) t.rest_length = millimeters(*c.l0_mm);
    if (c.rf_mm) t.outer_radius = millimeters(*c.rf_mm);
    if (c.df_mm) t.inner_radius = millimeters(*c.df_mm);
    if (c.ge_mpa) t.rubber_shear_modulus = megapascals(*c.ge_mpa);
    if (c.rf_mm || c.ge_mpa) t.source = TubeSource::UserSupplied;
    return t;
}

EmbroideryDesign design_from_config(const ActuatorConfig& c) {
    const Pattern p = c.pattern.value_or(Pattern::Zigzag);
    EmbroideryDesign d = p == Pattern::Zigzag ? EmbroideryDesign::zigzag(millimeters(c.w_mm.value_or(7.0)))
                                              : EmbroideryDesign::cross(millimeters(c.w_mm.value_or(7.0)),
                                                                        degrees(c.alpha_deg.value_or(45.0)));
    if (c.stitch_interval_mm) d.stitch_interval = millimeters(*c.stitch_interval_mm);
    if (c.orientation_sign) d.orientation_sign = *c.orientation_sign;
    return d;
}

} // namespace embroidery
