#include "cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "embroidery/actuator.hpp"
#include "embroidery/calibration.hpp"
#include "embroidery/config.hpp"
#include "embroidery/csv.hpp"
#include "embroidery/deformation.hpp"
#include "embroidery/errors.hpp"
#include "embroidery/experiment.hpp"
#include "embroidery/inflation.hpp"
#include "embroidery/reference_designs.hpp"

namespace embroidery::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr const char* kConfigSchema =
    "Config file (INI): [tube] l0_mm rf_mm df_mm ge_mpa | [design] pattern w_mm alpha_deg "
    "stitch_interval_mm orientation_sign | [model] g_mpa p0_kpa beta0_mode. Flags override the file.";

// ---------------------------------------------------------------------------
// Shared actuator flags
// ---------------------------------------------------------------------------

struct ActuatorFlags {
    std::string config_path;
    std::string tube_preset{"reference"};
    std::string pattern;
    std::string beta0_mode;
    double w_mm{0}, alpha_deg{0}, g_mpa{0}, p0_kpa{0}, rf_mm{0}, df_mm{0}, l0_mm{0}, ge_mpa{0}, stitch_mm{0};
    int orientation{-1};

    CLI::Option* o_pattern{};
    CLI::Option* o_beta0{};
    CLI::Option* o_w{};
    CLI::Option* o_alpha{};
    CLI::Option* o_g{};
    CLI::Option* o_p0{};
    CLI::Option* o_rf{};
    CLI::Option* o_df{};
    CLI::Option* o_l0{};
    CLI::Option* o_ge{};
    CLI::Option* o_stitch{};
    CLI::Option* o_orientation{};

    void add_tube(CLI::App* app) {
        app->add_option("--config", config_path, "Actuator config file (INI, see below)")->check(CLI::ExistingFile);
        app->add_option("--tube", tube_preset,
                        "Base tube: 'reference' ((r_f, G_e) fitted to the 5/7/9 mm transition pressures) or "
                        "'placeholder' (r_f = 1 mm, d_f = 0.5 mm, G_e = 0.6 MPa)")
            ->check(CLI::IsMember({"reference", "placeholder"}));
        o_rf = app->add_option("--rf-mm", rf_mm, "Tube outer radius at rest r_f [mm]");
        o_df = app->add_option("--df-mm", df_mm, "Tube inner radius at rest d_f [mm]");
        o_l0 = app->add_option("--l0-mm", l0_mm, "Tube rest length l0 [mm]");
        o_ge = app->add_option("--ge-mpa", ge_mpa, "Rubber shear modulus G_e [MPa]");
    }

    void add_design(CLI::App* app, bool scalar_model_params) {
        o_pattern = app->add_option("--pattern", pattern, "Embroidery pattern: zigzag | cross")
                        ->check(CLI::IsMember({"zigzag", "cross"}));
        o_w = app->add_option("--w-mm", w_mm, "Embroidery width w [mm]");
        o_alpha = app->add_option("--alpha-deg", alpha_deg, "Cross embroidery angle alpha0 [deg]");
        o_stitch = app->add_option("--stitch-mm", stitch_mm, "Stitch interval [mm] (metadata)");
        o_orientation = app->add_option("--orientation", orientation,
                                        "Sign mapping model bending to reported bending (+1 | -1, default -1)")
                            ->check(CLI::IsMember({-1, 1}));
        o_beta0 = app->add_option("--beta0-mode", beta0_mode,
                                  "Reference braiding angle formula: geometric (default) | verbatim-mm | sqrt-corrected")
                      ->check(CLI::IsMember({"geometric", "verbatim-mm", "sqrt-corrected"}));
        if (scalar_model_params) {
            o_g = app->add_option("--g-mpa", g_mpa, "Effective shear modulus G [MPa]");
            o_p0 = app->add_option("--p0-kpa", p0_kpa,
                                   "Transition pressure P0 [kPa] (default: derived from the tube inflation law)");
        }
    }

    [[nodiscard]] ActuatorConfig flag_config() const {
        ActuatorConfig c;
        auto set = [](CLI::Option* o) { return o != nullptr && o->count() > 0; };
        if (set(o_rf)) c.rf_mm = rf_mm;
        if (set(o_df)) c.df_mm = df_mm;
        if (set(o_l0)) c.l0_mm = l0_mm;
        if (set(o_ge)) c.ge_mpa = ge_mpa;
        if (set(o_pattern)) c.pattern = parse_pattern(pattern);
        if (set(o_w)) c.w_mm = w_mm;
        if (set(o_alpha)) c.alpha_deg = alpha_deg;
        if (set(o_stitch)) c.stitch_interval_mm = stitch_mm;
        if (set(o_orientation)) c.orientation_sign = orientation;
        if (set(o_beta0)) c.beta0_mode = parse_braiding_mode(beta0_mode);
        if (set(o_g)) c.g_mpa = g_mpa;
        if (set(o_p0)) c.p0_kpa = p0_kpa;
        return c;
    }

    [[nodiscard]] ActuatorConfig effective() const {
        ActuatorConfig file;
        if (!config_path.empty()) file = load_config(config_path);
        return file.merged_with(flag_config());
    }

    [[nodiscard]] TubeMaterial base_tube() const {
        return tube_preset == "placeholder" ? TubeMaterial{} : reference_tube();
    }
};

void check_design_flags(const ActuatorConfig& c) {
    const Pattern p = c.pattern.value_or(Pattern::Zigzag);
    if (p == Pattern::Zigzag && c.alpha_deg)
        throw UsageError("--alpha-deg applies only to --pattern cross");
    if (p == Pattern::Cross && !c.alpha_deg) throw UsageError("--alpha-deg is required for --pattern cross");
    if (c.w_mm && !(*c.w_mm >= 0.0)) throw UsageError("--w-mm must be >= 0");
    if (c.g_mpa && !(*c.g_mpa > 0.0)) throw UsageError("--g-mpa must be > 0");
    if (c.p0_kpa && !(*c.p0_kpa >= 0.0)) throw UsageError("--p0-kpa must be >= 0");
}

TubeMaterial checked_tube(const ActuatorConfig& c, const TubeMaterial& base) {
    TubeMaterial t = tube_from_config(c, base);
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " (check --rf-mm / --df-mm / --l0-mm / --ge-mpa)");
    }
    return t;
}

ActuatorModel build_model(const ActuatorConfig& c, const TubeMaterial& base) {
    check_design_flags(c);
    if (!c.g_mpa) throw UsageError("--g-mpa (or [model] g_mpa) is required");
    const TubeMaterial tube = checked_tube(c, base);
    ModelOptions opts;
    opts.braiding_mode = c.beta0_mode.value_or(BraidingMode::Geometric);
    if (c.p0_kpa) {
        opts.has_transition_pressure = true;
        opts.transition_pressure = kilopascals(*c.p0_kpa);
    }
    try {
        return make_actuator_model(tube, design_from_config(c), megapascals(*c.g_mpa), opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json config_json(const ActuatorConfig& c) {
    return {
        {"tube", {{"l0_mm", opt_json(c.l0_mm)}, {"rf_mm", opt_json(c.rf_mm)}, {"df_mm", opt_json(c.df_mm)},
                  {"ge_mpa", opt_json(c.ge_mpa)}}},
        {"design",
         {{"pattern", c.pattern ? json(std::string(to_string(*c.pattern))) : json(nullptr)},
          {"w_mm", opt_json(c.w_mm)},
          {"alpha_deg", opt_json(c.alpha_deg)},
          {"stitch_interval_mm", opt_json(c.stitch_interval_mm)},
          {"orientation_sign", opt_json(c.orientation_sign)}}},
        {"model",
         {{"g_mpa", opt_json(c.g_mpa)},
          {"p0_kpa", opt_json(c.p0_kpa)},
          {"beta0_mode", c.beta0_mode ? json(std::string(to_string(*c.beta0_mode))) : json(nullptr)}}},
    };
}

json tube_json(const TubeMaterial& t) {
    return {{"l0_mm", to_mm(t.rest_length)},
            {"rf_mm", to_mm(t.outer_radius)},
            {"df_mm", to_mm(t.inner_radius)},
            {"ge_mpa", to_mpa(t.rubber_shear_modulus)},
            {"source", std::string(to_string(t.source))}};
}

json model_json(const ActuatorModel& m) {
    json j = {{"pattern", std::string(to_string(m.design.pattern))},
              {"w_mm", to_mm(m.design.width)},
              {"stitch_interval_mm", to_mm(m.design.stitch_interval)},
              {"orientation_sign", m.design.orientation_sign},
              {"g_mpa", to_mpa(m.shear_modulus)},
              {"p0_kpa", to_kpa(m.transition_pressure)},
              {"p0_source", std::string(to_string(m.transition_source))},
              {"r0_mm", to_mm(m.sleeve_radius)},
              {"tube", tube_json(m.tube)}};
    if (m.design.pattern == Pattern::Cross) {
        j["alpha_deg"] = to_deg(m.design.angle);
        j["beta0_deg"] = to_deg(m.braiding_angle0);
        j["beta0_mode"] = std::string(to_string(m.braiding_mode));
    }
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    f << text;
}

fs::path sidecar_path(const fs::path& out) {
    fs::path p = out;
    if (p.extension() == ".json") return p.string() + ".meta.json";
    return p.replace_extension(".json");
}

std::string compact(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> parse_pair(const std::string& text, const std::string& flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": expected 'lo,hi', got '" + text + "'");
        }
    }
    if (v.size() != 2 || !(v[0] < v[1])) throw UsageError(flag + ": expected 'lo,hi' with lo < hi");
    return v;
}

std::ifstream open_input(const std::string& path, const std::string& flag) {
    std::ifstream f(path);
    if (!f) throw UsageError(flag + ": cannot open '" + path + "'");
    return f;
}

void emit_json(const json& j, const std::string& out_path, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        out << text;
    else
        write_text(out_path, text);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct PredictArgs {
    ActuatorFlags actuator;
    double p_max_kpa{300.0};
    double step_kpa{10.0};
    std::string out;
    CLI::Option* o_step{};
};

int cmd_predict(const PredictArgs& a, std::ostream& out) {
    if (!(a.step_kpa > 0.0)) throw UsageError("--step-kpa must be > 0");
    if (!(a.p_max_kpa >= 0.0)) throw UsageError("--p-max-kpa must be >= 0");
    const ActuatorConfig eff = a.actuator.effective();
    const ActuatorModel model = build_model(eff, a.actuator.base_tube());
    const PressureAngleCurve curve = sweep_curve(model, kilopascals(a.p_max_kpa), kilopascals(a.step_kpa));

    std::ostringstream csv_text;
    csv::write_curve(csv_text, curve);
    write_text(a.out, csv_text.str());

    const json meta = {{"command", "predict"},
                       {"effective_config", config_json(eff)},
                       {"model", model_json(model)},
                       {"sweep",
                        {{"p_max_kpa", a.p_max_kpa},
                         {"step_kpa", a.step_kpa},
                         {"samples", curve.samples.size()},
                         {"failed_samples", curve.metadata.failed_samples}}},
                       {"curve_csv", fs::path(a.out).filename().string()}};
    write_text(sidecar_path(a.out), meta.dump(2) + "\n");
    out << "wrote " << curve.samples.size() << " samples to " << a.out << "\n";
    return curve.all_ok() ? kExitOk : kExitSolverFailure;
}

struct TransitionArgs {
    ActuatorFlags actuator;
    std::string format{"json"};
};

int cmd_transition(const TransitionArgs& a, std::ostream& out) {
    const ActuatorConfig eff = a.actuator.effective();
    check_design_flags(eff);
    const TubeMaterial tube = checked_tube(eff, a.actuator.base_tube());
    EmbroideryDesign design;
    design.pattern = eff.pattern.value_or(Pattern::Zigzag);
    design.width = millimeters(eff.w_mm.value_or(7.0));
    const Transition tr = transition_pressure(tube, design);

    if (a.format == "table") {
        out << std::left << std::setw(10) << "w_mm" << std::setw(12) << "r0_mm" << std::setw(12) << "p0_kpa"
            << std::setw(10) << "rf_mm" << "ge_mpa\n";
        out << std::setw(10) << csv::format_number(to_mm(design.width), 3) << std::setw(12)
            << csv::format_number(to_mm(tr.radius), 6) << std::setw(12) << csv::format_number(to_kpa(tr.pressure), 4)
            << std::setw(10) << csv::format_number(to_mm(tube.outer_radius), 6)
            << csv::format_number(to_mpa(tube.rubber_shear_modulus), 6) << "\n";
        return kExitOk;
    }
    const json j = {{"w_mm", to_mm(design.width)},
                    {"r0_mm", to_mm(tr.radius)},
                    {"p0_kpa", to_kpa(tr.pressure)},
                    {"tube", tube_json(tube)},
                    {"effective_config", config_json(eff)}};
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct FitArgs {
    ActuatorFlags actuator;
    std::string data;
    std::string free{"G,P0"};
    std::string loss{"l2"};
    std::string g_bounds{"0.05,50"};
    std::string p0_bounds{"0,400"};
    bool include_down{false};
    int max_eval{5000};
    std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
    std::ifstream in = open_input(a.data, "--data");
    const std::vector<PressureAnglePair> obs = csv::read_pairs(in);

    CalibrationProblem problem;
    problem.observations = obs;
    problem.include_down_branch = a.include_down;
    problem.loss = a.loss == "huber" ? Loss::Huber : Loss::L2;
    problem.optimizer.max_evaluations = a.max_eval;
    const auto gb = parse_pair(a.g_bounds, "--g-bounds-mpa");
    const auto pb = parse_pair(a.p0_bounds, "--p0-bounds-kpa");
    problem.shear_modulus_bounds = {gb[0] * 1e6, gb[1] * 1e6};
    problem.transition_bounds = {pb[0] * 1e3, pb[1] * 1e3};
    problem.free_parameters.clear();
    {
        std::stringstream ss(a.free);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "G")
                problem.free_parameters.push_back(FitParameter::ShearModulus);
            else if (item == "P0")
                problem.free_parameters.push_back(FitParameter::TransitionPressure);
            else if (item == "none" || item.empty())
                continue;
            else
                throw UsageError("--free: unknown parameter '" + item + "' (expected G, P0 or none)");
        }
    }
    try {
        problem.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--data: ") + e.what());
    }

    ActuatorConfig eff = a.actuator.effective();
    // Missing start values begin at the bounds midpoints.
    if (!eff.g_mpa) eff.g_mpa = 0.5 * (gb[0] + gb[1]);
    if (!eff.p0_kpa) eff.p0_kpa = 0.5 * (pb[0] + pb[1]);
    const ActuatorModel model0 = build_model(eff, a.actuator.base_tube());
    const FitResult fit = fit_pressure_angle(problem, model0);

    const json j = {{"command", "fit"},
                    {"g_mpa", to_mpa(fit.shear_modulus)},
                    {"p0_kpa", to_kpa(fit.transition_pressure)},
                    {"rmse_rad", fit.rmse},
                    {"rmse_deg", fit.rmse * 180.0 / 3.14159265358979323846},
                    {"n_eval", fit.evaluations},
                    {"converged", fit.converged},
                    {"observations_used", fit.observations_used},
                    {"loss", a.loss},
                    {"free_params", a.free},
                    {"effective_config", config_json(eff)},
                    {"model0", model_json(model0)}};
    emit_json(j, a.out, out);
    return fit.converged ? kExitOk : kExitSolverFailure;
}

struct FitTubeArgs {
    std::string data;
    double fix_ge_mpa{0};
    double fix_rf_mm{0};
    double df_mm{0.5};
    double l0_mm{100.0};
    CLI::Option* o_fix_ge{};
    CLI::Option* o_fix_rf{};
    std::string out;
};

int cmd_fit_tube(const FitTubeArgs& a, std::ostream& out) {
    std::ifstream in = open_input(a.data, "--data");
    const std::vector<TransitionTarget> targets = csv::read_transition_targets(in);
    TubeMaterial base;
    base.inner_radius = millimeters(a.df_mm);
    base.rest_length = millimeters(a.l0_mm);
    TubeFitOptions opts;
    if (a.o_fix_ge->count() > 0) opts.fixed_rubber_modulus = megapascals(a.fix_ge_mpa);
    if (a.o_fix_rf->count() > 0) opts.fixed_outer_radius = millimeters(a.fix_rf_mm);
    TubeFitResult fit;
    try {
        fit = fit_tube_geometry(targets, base, opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--data: ") + e.what());
    }
    json rows = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i)
        rows.push_back({{"w_mm", to_mm(targets[i].width)},
                        {"p0_kpa", to_kpa(targets[i].transition_pressure)},
                        {"predicted_kpa", to_kpa(fit.predicted[i])}});
    const json j = {{"command", "fit-tube"},
                    {"rf_mm", to_mm(fit.outer_radius)},
                    {"ge_mpa", to_mpa(fit.rubber_modulus)},
                    {"rmse_kpa", to_kpa(fit.rmse)},
                    {"n_eval", fit.evaluations},
                    {"converged", fit.converged},
                    {"targets", rows}};
    emit_json(j, a.out, out);
    return fit.converged ? kExitOk : kExitSolverFailure;
}

struct MarkersArgs {
    std::string input;
    std::string out;
    std::string row{"mean"};
    double dwell_s{3.0};
    double tol_kpa{2.0};
};

int cmd_markers(const MarkersArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.dwell_s > 0.0)) throw UsageError("--dwell-s must be > 0");
    if (!(a.tol_kpa >= 0.0)) throw UsageError("--tol-kpa must be >= 0");
    std::ifstream in = open_input(a.input, "--input");
    const std::vector<MarkerFrame> frames = csv::read_mocap(in);

    PlateauOptions opts;
    opts.dwell_min = seconds(a.dwell_s);
    opts.tolerance = kilopascals(a.tol_kpa);
    opts.row = a.row == "left" ? MarkerRow::Left : a.row == "right" ? MarkerRow::Right : MarkerRow::Mean;
    const std::vector<Plateau> plateaus = detect_plateaus(frames, opts);

    std::vector<std::pair<Pressure, Angle>> pairs;
    for (const Plateau& p : plateaus) {
        if (!p.settled_theta) {
            err << "warning: plateau at t = " << p.t_start << " s has no complete marker frame; skipped\n";
            continue;
        }
        pairs.emplace_back(p.mean_pressure, *p.settled_theta);
    }
    std::ostringstream text;
    csv::write_pairs(text, split_branches(pairs));
    write_text(a.out, text.str());
    out << "wrote " << pairs.size() << " plateaus to " << a.out << "\n";
    return kExitOk;
}

struct SweepArgs {
    ActuatorFlags actuator;
    std::string param{"alpha"};
    std::vector<double> values;
    std::vector<double> g_mpa;
    std::vector<double> p0_kpa;
    double p_max_kpa{300.0};
    double step_kpa{10.0};
    std::string out_dir;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    if (!(a.step_kpa > 0.0)) throw UsageError("--step-kpa must be > 0");
    if (!(a.p_max_kpa >= 0.0)) throw UsageError("--p-max-kpa must be >= 0");
    if (a.values.empty()) throw UsageError("--values: at least one design value is required");
    auto per_design = [&](const std::vector<double>& list, const char* flag, std::size_t i) -> std::optional<double> {
        if (list.empty()) return std::nullopt;
        if (list.size() == 1) return list[0];
        if (list.size() != a.values.size())
            throw UsageError(std::string(flag) + ": give one value or one per --values entry");
        return list[i];
    };
    ActuatorConfig base = a.actuator.effective();
    if (a.param == "alpha" && !base.pattern) base.pattern = Pattern::Cross;
    if (a.param == "alpha" && base.pattern != Pattern::Cross)
        throw UsageError("--param alpha requires --pattern cross");

    const fs::path dir = a.out_dir;
    fs::create_directories(dir);
    std::ostringstream summary;
    summary << "design_param,theta_at_pmax_deg,p0_kpa\n";
    json designs = json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        ActuatorConfig c = base;
        if (a.param == "alpha")
            c.alpha_deg = a.values[i];
        else
            c.w_mm = a.values[i];
        if (auto g = per_design(a.g_mpa, "--g-mpa", i)) c.g_mpa = g;
        if (auto p = per_design(a.p0_kpa, "--p0-kpa", i)) c.p0_kpa = p;
        const ActuatorModel model = build_model(c, a.actuator.base_tube());
        const PressureAngleCurve curve = sweep_curve(model, kilopascals(a.p_max_kpa), kilopascals(a.step_kpa));
        all_ok = all_ok && curve.all_ok();

        const std::string name = "curve_" + a.param + "_" + compact(a.values[i]) + ".csv";
        std::ostringstream text;
        csv::write_curve(text, curve);
        write_text(dir / name, text.str());

        const CurveSample& last = curve.samples.back();
        summary << compact(a.values[i]) << ',' << (last.ok ? csv::format_number(to_deg(last.theta), 6) : "") << ','
                << csv::format_number(to_kpa(model.transition_pressure), 4) << '\n';
        designs.push_back({{"design_param", a.values[i]},
                           {"curve_csv", name},
                           {"failed_samples", curve.metadata.failed_samples},
                           {"model", model_json(model)}});
    }
    write_text(dir / "summary.csv", summary.str());
    const json meta = {{"command", "sweep"},
                       {"param", a.param},
                       {"p_max_kpa", a.p_max_kpa},
                       {"step_kpa", a.step_kpa},
                       {"effective_config", config_json(base)},
                       {"designs", designs}};
    write_text(dir / "sweep.json", meta.dump(2) + "\n");
    out << "wrote " << a.values.size() << " curves to " << dir.string() << "\n";
    return all_ok ? kExitOk : kExitSolverFailure;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-static bending model for embroidery pneumatic actuators.\n"
                 "Units at the boundary: kPa, MPa (moduli), mm, deg. Exit codes: 0 ok, 1 usage/schema error, "
                 "2 partial solver failure."};
    app.require_subcommand(1);
    app.name("embroidery");

    PredictArgs predict;
    auto* p = app.add_subcommand("predict", "Predict a pressure-angle curve for one actuator");
    predict.actuator.add_tube(p);
    predict.actuator.add_design(p, true);
    p->add_option("--p-max-kpa", predict.p_max_kpa, "Highest sampled pressure [kPa]")->capture_default_str();
    p->add_option("--step-kpa", predict.step_kpa, "Pressure increment [kPa]")->capture_default_str();
    p->add_option("--out", predict.out, "Curve CSV path; metadata goes to the same path with .json")->required();
    p->footer(std::string("Output CSV: pressure_kpa,theta_deg,l_mm,r_mm,status (status ok | no_equilibrium | "
                          "domain_error). ") +
              kConfigSchema);

    TransitionArgs transition;
    auto* t = app.add_subcommand("transition", "Sleeve radius r0 and transition pressure P0 of a design");
    transition.actuator.add_tube(t);
    transition.actuator.add_design(t, false);
    t->add_option("--format", transition.format, "json | table")->check(CLI::IsMember({"json", "table"}));
    t->footer(std::string("Prints {w_mm, r0_mm, p0_kpa, tube, effective_config}. ") + kConfigSchema);

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Fit G and/or P0 to measured pressure-angle pairs");
    fit.actuator.add_tube(f);
    fit.actuator.add_design(f, true);
    f->add_option("--data", fit.data, "Input CSV pressure_kpa,theta_deg,branch")->required();
    f->add_option("--free", fit.free, "Comma list of free parameters: G, P0 or none")->capture_default_str();
    f->add_option("--loss", fit.loss, "l2 | huber (delta 5 deg)")->check(CLI::IsMember({"l2", "huber"}));
    f->add_option("--g-bounds-mpa", fit.g_bounds, "Bounds 'lo,hi' for G [MPa]")->capture_default_str();
    f->add_option("--p0-bounds-kpa", fit.p0_bounds, "Bounds 'lo,hi' for P0 [kPa]")->capture_default_str();
    f->add_flag("--include-down", fit.include_down, "Also fit depressurisation (down) samples");
    f->add_option("--max-eval", fit.max_eval, "Objective evaluation budget")->capture_default_str();
    f->add_option("--out", fit.out, "Output JSON path (default: stdout)");
    f->footer(std::string("--g-mpa / --p0-kpa give start values (default: bounds midpoints). Output JSON: g_mpa, "
                          "p0_kpa, rmse_rad, rmse_deg, n_eval, converged. ") +
              kConfigSchema);

    FitTubeArgs fit_tube;
    auto* ft = app.add_subcommand("fit-tube", "Fit tube r_f and G_e to (w, P0) transition targets");
    ft->add_option("--data", fit_tube.data, "Input CSV w_mm,p0_kpa")->required();
    fit_tube.o_fix_ge = ft->add_option("--fix-ge-mpa", fit_tube.fix_ge_mpa, "Hold G_e fixed [MPa]");
    fit_tube.o_fix_rf = ft->add_option("--fix-rf-mm", fit_tube.fix_rf_mm, "Hold r_f fixed [mm]");
    ft->add_option("--df-mm", fit_tube.df_mm, "Tube inner radius d_f [mm] (carried through)")->capture_default_str();
    ft->add_option("--l0-mm", fit_tube.l0_mm, "Tube rest length [mm] (carried through)")->capture_default_str();
    ft->add_option("--out", fit_tube.out, "Output JSON path (default: stdout)");
    ft->footer("Bounds: r_f in [0.3, 3] mm, G_e in [0.05, 5] MPa. Output JSON: rf_mm, ge_mpa, rmse_kpa, targets.");

    MarkersArgs markers;
    auto* mk = app.add_subcommand("markers", "Turn a motion-capture log into pressure-angle pairs");
    mk->add_option("--input", markers.input, "Mocap CSV t,px1,py1,pz1,...,px14,py14,pz14,pressure_kpa")->required();
    mk->add_option("--out", markers.out, "Output CSV pressure_kpa,theta_deg,branch")->required();
    mk->add_option("--row", markers.row, "Marker row: left | right | mean")
        ->check(CLI::IsMember({"left", "right", "mean"}))
        ->capture_default_str();
    mk->add_option("--dwell-s", markers.dwell_s, "Minimum plateau duration [s]")->capture_default_str();
    mk->add_option("--tol-kpa", markers.tol_kpa, "Plateau pressure tolerance [kPa]")->capture_default_str();
    mk->footer("Markers 1-7 form the left row and 8-14 the right row, ordered along the actuator; positions in mm; "
               "empty fields mark a missing marker. Angles are averaged over the final third of each plateau.");

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "Predict one curve per design value (w or alpha0)");
    sweep.actuator.add_tube(sw);
    sweep.actuator.add_design(sw, false);
    sw->add_option("--param", sweep.param, "Swept design parameter: w | alpha")->check(CLI::IsMember({"w", "alpha"}));
    sw->add_option("--values", sweep.values, "Design values (mm for w, deg for alpha)")->required()->delimiter(',');
    sw->add_option("--g-mpa", sweep.g_mpa, "G per design [MPa] (one value or one per design)")->delimiter(',');
    sw->add_option("--p0-kpa", sweep.p0_kpa, "P0 per design [kPa] (default: derived)")->delimiter(',');
    sw->add_option("--p-max-kpa", sweep.p_max_kpa, "Highest sampled pressure [kPa]")->capture_default_str();
    sw->add_option("--step-kpa", sweep.step_kpa, "Pressure increment [kPa]")->capture_default_str();
    sw->add_option("--out-dir", sweep.out_dir, "Directory for curve CSVs, summary.csv and sweep.json")->required();
    sw->footer(std::string("summary.csv: design_param,theta_at_pmax_deg,p0_kpa. ") + kConfigSchema);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (p->parsed()) return cmd_predict(predict, out);
        if (t->parsed()) return cmd_transition(transition, out);
        if (f->parsed()) return cmd_fit(fit, out);
        if (ft->parsed()) return cmd_fit_tube(fit_tube, out);
        if (mk->parsed()) return cmd_markers(markers, out, err);
        if (sw->parsed()) return cmd_sweep(sweep, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const NoEquilibriumError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"embroidery"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace embroidery::cli
