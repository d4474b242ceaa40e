// Command-line front end: run scenarios, sweep parameter grids, list the
// built-in presets and check run invariants.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermoecon/analysis.hpp"
#include "thermoecon/emit.hpp"
#include "thermoecon/integrator.hpp"
#include "thermoecon/scenario.hpp"

namespace te = thermoecon;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string output_dir(const std::string& cli_value) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("THERMOECON_OUT_DIR"); env && *env) return env;
    return "out";
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string spec_hash(const te::ScenarioSpec& spec) {
    std::ostringstream hex;
    hex << std::hex << fnv1a(te::scenario_to_json(spec));
    return hex.str();
}

void apply_overrides(te::ScenarioSpec& spec, double dt, double horizon, int stride) {
    if (dt > 0.0) spec.dt = dt;
    if (horizon >= 0.0) spec.horizon = horizon;
    if (stride > 0) spec.output_stride = stride;
    spec.validate();
}

int emit_record(const te::RunRecord& rec, const te::ScenarioSpec& spec,
                const std::string& dir, const std::vector<std::string>& formats) {
    namespace fs = std::filesystem;
    const std::string base = (fs::path(dir) / spec.name).string();
    for (const std::string& f : formats) {
        if (f == "csv") {
            te::write_file(base + ".csv", te::to_csv(rec));
            std::cout << "wrote " << base << ".csv\n";
        } else if (f == "json") {
            te::write_file(base + ".json", te::to_json(rec));
            std::cout << "wrote " << base << ".json\n";
        } else if (f == "svg") {
            for (const std::string& p : te::emit_svg(rec, dir, spec.name))
                std::cout << "wrote " << p << "\n";
        } else {
            std::cerr << "unknown format '" << f << "' (expected csv, json or svg)\n";
            return kExitValidation;
        }
    }
    return kExitOk;
}

int report_status(const te::RunRecord& rec) {
    for (const std::string& w : rec.warnings) std::cerr << "warning: " << w << "\n";
    switch (rec.status) {
        case te::RunStatus::Completed:
            std::cout << "completed, t=" << rec.end_time << ", " << rec.samples.size()
                      << " samples\n";
            return kExitOk;
        case te::RunStatus::Collapsed:
            std::cout << "collapsed: " << rec.message << "\n";
            return kExitOk;  // a collapse is a model outcome, not a failure
        case te::RunStatus::StepRejected:
            std::cerr << "numerical failure: " << rec.message << "\n";
            return kExitNumerical;
    }
    return kExitNumerical;
}

struct SweepAxis {
    std::string param;  // JSON pointer into the scenario document
    std::vector<double> values;
};

struct SweepPoint {
    te::ScenarioSpec spec;
    std::vector<double> values;
};

std::vector<SweepPoint> expand_grid(const json& base, const std::vector<SweepAxis>& axes) {
    std::vector<SweepPoint> points;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        json doc = base;
        std::vector<double> values;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            doc[json::json_pointer(axes[a].param)] = axes[a].values[idx[a]];
            values.push_back(axes[a].values[idx[a]]);
        }
        SweepPoint pt;
        pt.spec = te::scenario_from_json(doc.dump());
        pt.values = std::move(values);
        points.push_back(std::move(pt));

        std::size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++idx[a] < axes[a].values.size()) break;
            idx[a] = 0;
        }
        if (a == axes.size()) break;
    }
    return points;
}

int run_sweep(const std::string& file, const std::string& out_dir) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "sweep file '" << file << "' not found\n";
        return kExitValidation;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    json base_doc;
    std::vector<SweepAxis> axes;
    try {
        const json j = json::parse(buf.str(), nullptr, true, /*ignore_comments=*/true);
        if (!j.contains("base") || !j.contains("axes")) {
            std::cerr << "sweep file needs 'base' (preset or path) and 'axes'\n";
            return kExitValidation;
        }
        const std::string base_name = j["base"].get<std::string>();
        base_doc = json::parse(te::scenario_to_json(te::load_scenario(base_name)));
        for (const json& a : j["axes"]) {
            SweepAxis axis;
            axis.param = a.at("param").get<std::string>();
            for (const json& v : a.at("values")) axis.values.push_back(v.get<double>());
            if (axis.values.empty()) {
                std::cerr << "axis '" << axis.param << "' has no values\n";
                return kExitValidation;
            }
            axes.push_back(std::move(axis));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("sweep file: ") + e.what());
    }

    std::vector<SweepPoint> points = expand_grid(base_doc, axes);
    std::cout << "sweep: " << points.size() << " grid points\n";

    struct Row {
        std::string hash;
        te::RunStatus status;
        double pinch = 0.0, cumulative_G = 0.0;
    };
    std::vector<Row> rows(points.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(points.size()));

    std::vector<std::future<void>> tasks;
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
        tasks.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < points.size();
                 i = next.fetch_add(1)) {
                te::ScenarioSpec spec = points[i].spec;
                spec.name = "point" + std::to_string(i);
                const te::RunRecord rec = te::run(spec);
                Row& row = rows[i];
                row.hash = spec_hash(spec);
                row.status = rec.status;
                row.pinch = rec.sheet_count() ? te::pinch_time(rec, 0, 0.05) : te::kNever;
                row.cumulative_G = te::cumulative_production(rec);
                te::write_file((std::filesystem::path(out_dir) /
                                ("point" + std::to_string(i) + "_" + row.hash + ".csv"))
                                   .string(),
                               te::to_csv(rec));
            }
        }));
    }
    for (auto& t : tasks) t.get();

    std::ostringstream csv;
    csv << "point,hash";
    for (const SweepAxis& a : axes) csv << "," << a.param;
    csv << ",status,time_to_pinch,cumulative_G\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        csv << i << "," << rows[i].hash;
        for (double v : points[i].values) csv << "," << v;
        csv << ","
            << (rows[i].status == te::RunStatus::Completed   ? "completed"
                : rows[i].status == te::RunStatus::Collapsed ? "collapsed"
                                                             : "step_rejected");
        if (std::isfinite(rows[i].pinch))
            csv << "," << rows[i].pinch;
        else
            csv << ",";
        csv << "," << rows[i].cumulative_G << "\n";
    }
    const std::string summary =
        (std::filesystem::path(out_dir) / "sweep_summary.csv").string();
    te::write_file(summary, csv.str());
    std::cout << "wrote " << summary << "\n";
    return kExitOk;
}

int run_check(const std::string& name) {
    te::ScenarioSpec spec = te::load_scenario(name);
    const te::RunRecord rec = te::run(spec);
    int failures = 0;
    auto report = [&](const char* what, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << what;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    {
        std::ostringstream d;
        bool ok = true;
        if (!spec.sheets.empty()) {
            const double err = te::max_conservation_error(rec, spec);
            ok = err < 1e-6;
            d << "max relative drift " << err;
        } else {
            d << "no sheets";
        }
        report("conservation", ok, d.str());
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (const te::Sample& row : rec.samples)
            for (const te::FlowReport& f : row.flows) {
                if (f.diag.S_dot && *f.diag.S_dot < 0.0) ok = false;
                if (f.diag.eta && f.mu_H > 0.0) {
                    const double bound = 1.0 - f.mu_L / f.mu_H;
                    worst = std::max(worst, *f.diag.eta - bound);
                    if (*f.diag.eta > bound + 1e-12) ok = false;
                }
            }
        std::ostringstream d;
        d << "max eta excess " << worst;
        report("entropy and efficiency bounds", ok, d.str());
    }
    {
        bool ok = true;
        for (std::size_t i = 1; i < rec.samples.size(); ++i)
            if (rec.samples[i].t <= rec.samples[i - 1].t) ok = false;
        report("strictly increasing timestamps", ok, "");
    }
    {
        const bool ok = rec.status != te::RunStatus::StepRejected;
        report("no step rejection", ok, rec.message);
    }
    if (failures) {
        std::cerr << failures << " check(s) failed\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physical-sheet resource economy simulator"};
    app.require_subcommand(1);

    std::string scenario_name, out_flag, sweep_file, check_name;
    std::vector<std::string> formats{"csv"};
    double dt = -1.0, horizon = -1.0;
    int stride = -1;

    CLI::App* cmd_run = app.add_subcommand("run", "integrate one scenario");
    cmd_run->add_option("scenario", scenario_name, "preset name or scenario file")
        ->required();
    cmd_run->add_option("--dt", dt, "override time step");
    cmd_run->add_option("--horizon", horizon, "override horizon");
    cmd_run->add_option("--stride", stride, "override output stride (steps)");
    cmd_run->add_option("--out", out_flag, "output directory");
    cmd_run->add_option("--format", formats, "csv, json and/or svg")
        ->delimiter(',');

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a parameter grid");
    cmd_sweep->add_option("file", sweep_file, "sweep description file")->required();
    cmd_sweep->add_option("--out", out_flag, "output directory");

    app.add_subcommand("list-presets", "print the built-in scenario names");

    CLI::App* cmd_check = app.add_subcommand("check", "run the invariant suite on a scenario");
    cmd_check->add_option("scenario", check_name, "preset name or scenario file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (app.got_subcommand("list-presets")) {
            for (const std::string& n : te::preset_names()) std::cout << n << "\n";
            return kExitOk;
        }
        if (app.got_subcommand("run")) {
            te::ScenarioSpec spec = te::load_scenario(scenario_name);
            apply_overrides(spec, dt, horizon, stride);
            const te::RunRecord rec = te::run(spec);
            const int emit_rc = emit_record(rec, spec, output_dir(out_flag), formats);
            if (emit_rc != kExitOk) return emit_rc;
            return report_status(rec);
        }
        if (app.got_subcommand("sweep")) return run_sweep(sweep_file, output_dir(out_flag));
        if (app.got_subcommand("check")) return run_check(check_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
