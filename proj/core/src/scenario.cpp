#include "thermoecon/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace thermoecon {

using nlohmann::json;

namespace {

// Initial demand of the coupled presets, as a fraction of the standard
// scenario's attainable production maximum. Shared across all macro
// presets so they differ only in their physical parameters, and small
// enough that even the high-friction engine can serve demand at t = 0.
constexpr double kMacroDemandFraction = 0.008;

ScenarioSpec resource_case(const std::string& name, IntensityMode mode,
                           double fraction = 1.0) {
    ScenarioSpec s;
    s.name = name;
    s.mode = RunMode::SheetOnly;
    SheetSpec sheet;  // resource case-study constants
    sheet.params = SheetParams{};
    sheet.policy.mode = mode;
    sheet.policy.fraction = fraction;
    sheet.policy.recycling = RecyclingMode::AtMax;
    s.sheets.push_back(sheet);
    s.sheet_init.push_back(SheetInit{});
    s.demand = 30.0;
    s.horizon = 100.0;
    s.dt = 1e-3;
    s.output_stride = 100;
    return s;
}

ScenarioSpec macro_case(const std::string& name, double X_T, double R_P0, double n_R) {
    ScenarioSpec s;
    s.name = name;
    s.mode = RunMode::Coupled;
    SheetSpec sheet;
    sheet.params = SheetParams{};
    sheet.params.X_T = X_T;
    sheet.params.R_P = R_P0;
    sheet.params.n_R = n_R;
    sheet.policy.mode = IntensityMode::Optimal;
    sheet.policy.recycling = RecyclingMode::AtMax;
    s.sheets.push_back(sheet);
    s.sheet_init.push_back(SheetInit{});
    s.econ = EconParams{};
    s.econ_init = EconInit{};
    // One shared bridge for all macro presets, pinned against the
    // standard scenario's initial capacity.
    const double G_max_ref = 1.0 / (4.0 * (1e-3 + s.coupling.friction_floor));
    s.coupling.kappa = kMacroDemandFraction * G_max_ref / s.econ_init.Y;
    s.horizon = 100.0;
    s.dt = 1e-3;
    s.output_stride = 100;
    return s;
}

const std::vector<std::string> kPresetNames = {
    "case1-max",     "case2-optimal", "case3-weak",   "recycling-s20",
    "recycling-s10", "friction-low",  "friction-high", "goodwin",
    "macro-1",       "macro-2",       "macro-3",       "macro-4",
};

}  // namespace

std::vector<std::string> preset_names() { return kPresetNames; }

bool is_preset(const std::string& name) {
    for (const std::string& p : kPresetNames)
        if (p == name) return true;
    return false;
}

ScenarioSpec preset(const std::string& name) {
    if (name == "case1-max") return resource_case(name, IntensityMode::MaxIntensity);
    if (name == "case2-optimal") return resource_case(name, IntensityMode::Optimal);
    if (name == "case3-weak")
        return resource_case(name, IntensityMode::FractionOfOptimal, 0.2);
    if (name == "recycling-s20") return resource_case(name, IntensityMode::Optimal);
    if (name == "recycling-s10") {
        ScenarioSpec s = resource_case(name, IntensityMode::Optimal);
        s.sheets[0].params.s = 0.1;
        return s;
    }
    if (name == "friction-low") {
        ScenarioSpec s = resource_case(name, IntensityMode::Optimal);
        s.sheets[0].params.R_P = 4e-5;
        return s;
    }
    if (name == "friction-high") {
        ScenarioSpec s = resource_case(name, IntensityMode::Optimal);
        s.sheets[0].params.R_P = 0.1;
        return s;
    }
    if (name == "goodwin") {
        ScenarioSpec s;
        s.name = name;
        s.mode = RunMode::GoodwinOnly;
        s.horizon = 100.0;
        s.dt = 1e-3;
        s.output_stride = 100;
        return s;
    }
    if (name == "macro-1") return macro_case(name, 1e8, 1e-3, 1.0);
    if (name == "macro-2") return macro_case(name, 100.0, 1e-3, 1.0);
    if (name == "macro-3") return macro_case(name, 100.0, 1e-3, 0.0);
    if (name == "macro-4") return macro_case(name, 100.0, 0.1, 1.0);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

void ScenarioSpec::validate() const {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("scenario: " + what);
    };
    if (!(dt > 0.0)) fail("dt must be > 0");
    if (!(horizon >= 0.0)) fail("horizon must be >= 0");
    if (output_stride < 1) fail("output_stride must be >= 1");
    if (grace_window < 0.0) fail("grace_window must be >= 0");

    if (mode == RunMode::GoodwinOnly) {
        if (!sheets.empty()) fail("goodwin_only runs take no sheets");
    } else {
        if (sheets.empty()) fail("at least one sheet is required");
    }
    if (mode == RunMode::SheetOnly && demand < 0.0) fail("demand must be >= 0");

    for (std::size_t i = 0; i < sheets.size(); ++i) {
        sheets[i].params.validate();
        sheets[i].policy.validate();
        if (i < sheet_init.size()) {
            const SheetInit& init = sheet_init[i];
            const double X_T = sheets[i].params.X_T;
            if (init.X_H >= 0.0) {
                if (init.X_L < 0.0 || init.X_S < 0.0 || init.J_P < 0.0)
                    fail("sheet initial stocks must be >= 0");
                const double sum = init.X_H + init.X_L + init.X_S;
                if (std::abs(sum - X_T) > 1e-9 * X_T)
                    fail("sheet initial stocks must sum to X_T");
            }
        }
    }
    if (sheet_init.size() > sheets.size()) fail("more sheet initials than sheets");

    if (mode != RunMode::SheetOnly) {
        econ.validate();
        if (!(econ_init.lambda > 0.0 && econ_init.lambda <= 1.0))
            fail("economy.initial.lambda must be in (0, 1]");
        if (!(econ_init.N > 0.0) || econ_init.N > econ.P_N)
            fail("economy.initial.N must be in (0, P_N]");
        if (!(econ_init.Y > 0.0)) fail("economy.initial.Y must be > 0");
        if (!(econ_init.omega > 0.0)) fail("economy.initial.omega must be > 0");
        if (econ_init.w < 0.0) fail("economy.initial.w must be >= 0");
    }
    if (mode == RunMode::Coupled) coupling.validate();
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("scenario: " + path + ": " + what);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) parse_fail(path, "unknown key '" + key + "'");
    }
}

double num_or(const json& j, const std::string& path, const char* key, double def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number()) parse_fail(path + "." + key, "expected a number");
    return j[key].get<double>();
}

int int_or(const json& j, const std::string& path, const char* key, int def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number_integer()) parse_fail(path + "." + key, "expected an integer");
    return j[key].get<int>();
}

bool bool_or(const json& j, const std::string& path, const char* key, bool def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_boolean()) parse_fail(path + "." + key, "expected a boolean");
    return j[key].get<bool>();
}

std::string str_or(const json& j, const std::string& path, const char* key,
                   const std::string& def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_string()) parse_fail(path + "." + key, "expected a string");
    return j[key].get<std::string>();
}

SheetSpec parse_sheet(const json& j, const std::string& path, SheetInit& init_out) {
    check_keys(j, path, {"params", "policy", "initial"});
    SheetSpec sheet;
    if (j.contains("params")) {
        const json& p = j["params"];
        const std::string pp = path + ".params";
        check_keys(p, pp,
                   {"X_T", "alpha", "r", "s", "R_P", "R_R", "n_P", "n_R", "tau",
                    "normalized_potentials"});
        SheetParams& sp = sheet.params;
        sp.X_T = num_or(p, pp, "X_T", sp.X_T);
        sp.alpha = num_or(p, pp, "alpha", sp.alpha);
        sp.r = num_or(p, pp, "r", sp.r);
        sp.s = num_or(p, pp, "s", sp.s);
        sp.R_P = num_or(p, pp, "R_P", sp.R_P);
        sp.R_R = num_or(p, pp, "R_R", sp.R_R);
        sp.n_P = num_or(p, pp, "n_P", sp.n_P);
        sp.n_R = num_or(p, pp, "n_R", sp.n_R);
        sp.tau = num_or(p, pp, "tau", sp.tau);
        sp.normalized_potentials =
            bool_or(p, pp, "normalized_potentials", sp.normalized_potentials);
    }
    if (j.contains("policy")) {
        const json& p = j["policy"];
        const std::string pp = path + ".policy";
        check_keys(p, pp, {"mode", "fraction", "recycling"});
        const std::string mode = str_or(p, pp, "mode", "optimal");
        if (mode == "max")
            sheet.policy.mode = IntensityMode::MaxIntensity;
        else if (mode == "optimal")
            sheet.policy.mode = IntensityMode::Optimal;
        else if (mode == "fraction_of_optimal")
            sheet.policy.mode = IntensityMode::FractionOfOptimal;
        else
            parse_fail(pp + ".mode", "expected max | optimal | fraction_of_optimal");
        sheet.policy.fraction = num_or(p, pp, "fraction", sheet.policy.fraction);
        const std::string rec = str_or(p, pp, "recycling", "at_max");
        if (rec == "at_max")
            sheet.policy.recycling = RecyclingMode::AtMax;
        else if (rec == "proportional")
            sheet.policy.recycling = RecyclingMode::Proportional;
        else
            parse_fail(pp + ".recycling", "expected at_max | proportional");
    }
    if (j.contains("initial")) {
        const json& p = j["initial"];
        const std::string pp = path + ".initial";
        check_keys(p, pp, {"X_H", "X_L", "X_S", "J_P"});
        init_out.X_H = num_or(p, pp, "X_H", init_out.X_H);
        init_out.X_L = num_or(p, pp, "X_L", init_out.X_L);
        init_out.X_S = num_or(p, pp, "X_S", init_out.X_S);
        init_out.J_P = num_or(p, pp, "J_P", init_out.J_P);
    }
    return sheet;
}

}  // namespace

ScenarioSpec scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: not valid JSON: ") + e.what());
    }
    check_keys(j, "$",
               {"name", "mode", "horizon", "dt", "output_stride", "grace_window",
                "demand", "sheets", "economy", "coupling"});

    ScenarioSpec s;
    s.name = str_or(j, "$", "name", "custom");
    const std::string mode = str_or(j, "$", "mode", "sheet_only");
    if (mode == "sheet_only")
        s.mode = RunMode::SheetOnly;
    else if (mode == "goodwin_only")
        s.mode = RunMode::GoodwinOnly;
    else if (mode == "coupled")
        s.mode = RunMode::Coupled;
    else
        parse_fail("$.mode", "expected sheet_only | goodwin_only | coupled");

    s.horizon = num_or(j, "$", "horizon", s.horizon);
    s.dt = num_or(j, "$", "dt", s.dt);
    s.output_stride = int_or(j, "$", "output_stride", s.output_stride);
    s.grace_window = num_or(j, "$", "grace_window", s.grace_window);
    s.demand = num_or(j, "$", "demand", s.demand);

    if (j.contains("sheets")) {
        if (!j["sheets"].is_array()) parse_fail("$.sheets", "expected an array");
        std::size_t i = 0;
        for (const json& item : j["sheets"]) {
            std::ostringstream path;
            path << "$.sheets[" << i++ << "]";
            SheetInit init;
            s.sheets.push_back(parse_sheet(item, path.str(), init));
            s.sheet_init.push_back(init);
        }
    } else if (s.mode != RunMode::GoodwinOnly) {
        s.sheets.push_back(SheetSpec{});
        s.sheet_init.push_back(SheetInit{});
    }

    if (j.contains("economy")) {
        const json& e = j["economy"];
        check_keys(e, "$.economy", {"params", "initial"});
        if (e.contains("params")) {
            const json& p = e["params"];
            const std::string pp = "$.economy.params";
            check_keys(p, pp, {"nu", "alpha_g", "q", "P_N", "delta", "phi0", "phi1", "m"});
            s.econ.nu = num_or(p, pp, "nu", s.econ.nu);
            s.econ.alpha_g = num_or(p, pp, "alpha_g", s.econ.alpha_g);
            s.econ.q = num_or(p, pp, "q", s.econ.q);
            s.econ.P_N = num_or(p, pp, "P_N", s.econ.P_N);
            s.econ.delta = num_or(p, pp, "delta", s.econ.delta);
            s.econ.phi0 = num_or(p, pp, "phi0", s.econ.phi0);
            s.econ.phi1 = num_or(p, pp, "phi1", s.econ.phi1);
            s.econ.m = num_or(p, pp, "m", s.econ.m);
        }
        if (e.contains("initial")) {
            const json& p = e["initial"];
            const std::string pp = "$.economy.initial";
            check_keys(p, pp, {"omega", "lambda", "N", "w", "Y"});
            s.econ_init.omega = num_or(p, pp, "omega", s.econ_init.omega);
            s.econ_init.lambda = num_or(p, pp, "lambda", s.econ_init.lambda);
            s.econ_init.N = num_or(p, pp, "N", s.econ_init.N);
            s.econ_init.w = num_or(p, pp, "w", s.econ_init.w);
            s.econ_init.Y = num_or(p, pp, "Y", s.econ_init.Y);
        }
    }

    if (j.contains("coupling")) {
        const json& c = j["coupling"];
        const std::string pp = "$.coupling";
        check_keys(c, pp, {"kappa", "demand_fraction", "friction_law", "friction_floor"});
        s.coupling.kappa = num_or(c, pp, "kappa", s.coupling.kappa);
        s.coupling.demand_fraction =
            num_or(c, pp, "demand_fraction", s.coupling.demand_fraction);
        s.coupling.friction_law = bool_or(c, pp, "friction_law", s.coupling.friction_law);
        s.coupling.friction_floor =
            num_or(c, pp, "friction_floor", s.coupling.friction_floor);
    }

    s.validate();
    return s;
}

std::string scenario_to_json(const ScenarioSpec& s) {
    json j;
    j["name"] = s.name;
    j["mode"] = s.mode == RunMode::SheetOnly  ? "sheet_only"
                : s.mode == RunMode::Coupled  ? "coupled"
                                              : "goodwin_only";
    j["horizon"] = s.horizon;
    j["dt"] = s.dt;
    j["output_stride"] = s.output_stride;
    j["grace_window"] = s.grace_window;
    if (s.mode == RunMode::SheetOnly) j["demand"] = s.demand;

    if (!s.sheets.empty()) {
        json sheets = json::array();
        for (std::size_t i = 0; i < s.sheets.size(); ++i) {
            const SheetSpec& sh = s.sheets[i];
            json p;
            p["X_T"] = sh.params.X_T;
            p["alpha"] = sh.params.alpha;
            p["r"] = sh.params.r;
            p["s"] = sh.params.s;
            p["R_P"] = sh.params.R_P;
            p["R_R"] = sh.params.R_R;
            p["n_P"] = sh.params.n_P;
            p["n_R"] = sh.params.n_R;
            p["tau"] = sh.params.tau;
            p["normalized_potentials"] = sh.params.normalized_potentials;
            json pol;
            pol["mode"] = sh.policy.mode == IntensityMode::MaxIntensity ? "max"
                          : sh.policy.mode == IntensityMode::Optimal    ? "optimal"
                                                                        : "fraction_of_optimal";
            pol["fraction"] = sh.policy.fraction;
            pol["recycling"] =
                sh.policy.recycling == RecyclingMode::AtMax ? "at_max" : "proportional";
            json entry;
            entry["params"] = p;
            entry["policy"] = pol;
            if (i < s.sheet_init.size()) {
                const SheetInit& init = s.sheet_init[i];
                json in;
                in["X_H"] = init.X_H < 0.0 ? sh.params.X_T : init.X_H;
                in["X_L"] = init.X_L;
                in["X_S"] = init.X_S;
                in["J_P"] = init.J_P;
                entry["initial"] = in;
            }
            sheets.push_back(entry);
        }
        j["sheets"] = sheets;
    }

    if (s.mode != RunMode::SheetOnly) {
        json p;
        p["nu"] = s.econ.nu;
        p["alpha_g"] = s.econ.alpha_g;
        p["q"] = s.econ.q;
        p["P_N"] = s.econ.P_N;
        p["delta"] = s.econ.delta;
        p["phi0"] = s.econ.phi0;
        p["phi1"] = s.econ.phi1;
        p["m"] = s.econ.m;
        json in;
        in["omega"] = s.econ_init.omega;
        in["lambda"] = s.econ_init.lambda;
        in["N"] = s.econ_init.N;
        in["w"] = s.econ_init.w;
        in["Y"] = s.econ_init.Y;
        j["economy"] = {{"params", p}, {"initial", in}};
    }
    if (s.mode == RunMode::Coupled) {
        json c;
        c["kappa"] = s.coupling.kappa;
        c["demand_fraction"] = s.coupling.demand_fraction;
        c["friction_law"] = s.coupling.friction_law;
        c["friction_floor"] = s.coupling.friction_floor;
        j["coupling"] = c;
    }
    return j.dump(2) + "\n";
}

ScenarioSpec load_scenario(const std::string& name_or_path) {
    if (is_preset(name_or_path)) return preset(name_or_path);
    std::ifstream in(name_or_path);
    if (!in)
        throw std::invalid_argument("scenario '" + name_or_path +
                                    "': no such preset or file");
    std::ostringstream buf;
    buf << in.rdbuf();
    ScenarioSpec s = scenario_from_json(buf.str());
    if (s.name == "custom")
        s.name = std::filesystem::path(name_or_path).stem().string();
    return s;
}

}  // namespace thermoecon
