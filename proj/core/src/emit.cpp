#include "thermoecon/emit.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thermoecon {

using nlohmann::json;

namespace {

const char* const kSheetColumns[] = {
    "X_H",    "X_L",   "X_S",   "mu_H",    "mu_L",     "delta_mu",
    "J_P",    "J_P_demanded", "J_P_max", "J_R", "J_R_max",
    "F_HP",   "F_LP",  "G",     "F_HR",    "F_LR",     "F_RIn",
    "F_NR",   "F_HR_over_XL", "F_NR_over_XL",
    "G_D",    "G_D_satisfied", "R_P_eff",
    "eta",    "epsilon", "S_dot", "S_HP_dot", "S_LP_dot", "E_HP_dot",
};

const char* const kEconColumns[] = {
    "omega", "lambda", "N", "w", "Y", "K", "a",
    "p", "profit", "investment", "demand", "delivered", "K_over_nuY_drift",
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

void sheet_values(const SheetState& s, const FlowReport& f,
                  std::vector<std::string>& out) {
    const auto ratio = [](double num, double den) -> std::string {
        return den > 0.0 ? fmt(num / den) : std::string();
    };
    out.push_back(fmt(s.X_H));
    out.push_back(fmt(s.X_L));
    out.push_back(fmt(s.X_S));
    out.push_back(fmt(f.mu_H));
    out.push_back(fmt(f.mu_L));
    out.push_back(fmt(f.delta_mu));
    out.push_back(fmt(f.J_P));
    out.push_back(fmt(f.J_P_demanded));
    out.push_back(fmt(f.J_P_max));
    out.push_back(fmt(f.J_R));
    out.push_back(fmt(f.J_R_max));
    out.push_back(fmt(f.F_HP));
    out.push_back(fmt(f.F_LP));
    out.push_back(fmt(f.G));
    out.push_back(fmt(f.F_HR));
    out.push_back(fmt(f.F_LR));
    out.push_back(fmt(f.F_RIn));
    out.push_back(fmt(f.F_NR));
    out.push_back(ratio(f.F_HR, s.X_L));
    out.push_back(ratio(f.F_NR, s.X_L));
    out.push_back(fmt(f.G_D));
    out.push_back(fmt(f.G_D_satisfied));
    out.push_back(fmt(f.R_P_eff));
    out.push_back(fmt(f.diag.eta));
    out.push_back(fmt(f.diag.epsilon));
    out.push_back(fmt(f.diag.S_dot));
    out.push_back(fmt(f.diag.S_HP_dot));
    out.push_back(fmt(f.diag.S_LP_dot));
    out.push_back(fmt(f.diag.E_HP_dot));
}

}  // namespace

std::string csv_header(std::size_t sheet_count, bool has_econ) {
    std::ostringstream h;
    h << "t";
    for (std::size_t i = 0; i < sheet_count; ++i) {
        std::string prefix;
        if (sheet_count > 1) prefix = "s" + std::to_string(i) + "_";
        for (const char* col : kSheetColumns) h << "," << prefix << col;
    }
    if (has_econ)
        for (const char* col : kEconColumns) h << ",econ_" << col;
    return h.str();
}

std::string to_csv(const RunRecord& record) {
    std::ostringstream out;
    out << csv_header(record.sheet_count(), record.has_econ()) << "\n";
    for (const Sample& row : record.samples) {
        std::vector<std::string> cells;
        cells.push_back(fmt(row.t));
        for (std::size_t i = 0; i < row.sheets.size(); ++i)
            sheet_values(row.sheets[i], row.flows[i], cells);
        if (row.econ) {
            const EconSample& e = *row.econ;
            cells.push_back(fmt(e.state.omega));
            cells.push_back(fmt(e.state.lambda));
            cells.push_back(fmt(e.state.N));
            cells.push_back(fmt(e.state.w));
            cells.push_back(fmt(e.state.Y));
            cells.push_back(fmt(e.state.K));
            cells.push_back(fmt(e.state.a));
            cells.push_back(fmt(e.p));
            cells.push_back(fmt(e.profit));
            cells.push_back(fmt(e.investment));
            cells.push_back(fmt(e.demand));
            cells.push_back(fmt(e.delivered));
            cells.push_back(fmt(e.capital_output_drift));
        }
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << "\n";
    }
    return out.str();
}

namespace {

json opt_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json flows_json(const FlowReport& f) {
    json j;
    j["mu_H"] = f.mu_H;
    j["mu_L"] = f.mu_L;
    j["delta_mu"] = f.delta_mu;
    j["R_P_eff"] = f.R_P_eff;
    j["J_P"] = f.J_P;
    j["J_P_demanded"] = f.J_P_demanded;
    j["J_P_max"] = f.J_P_max;
    j["J_R"] = f.J_R;
    j["J_R_max"] = f.J_R_max;
    j["F_HP"] = f.F_HP;
    j["F_LP"] = f.F_LP;
    j["G"] = f.G;
    j["F_HR"] = f.F_HR;
    j["F_LR"] = f.F_LR;
    j["F_RIn"] = f.F_RIn;
    j["F_NR"] = f.F_NR;
    j["G_D"] = f.G_D;
    j["G_D_satisfied"] = f.G_D_satisfied;
    j["eta"] = opt_json(f.diag.eta);
    j["epsilon"] = opt_json(f.diag.epsilon);
    j["S_dot"] = opt_json(f.diag.S_dot);
    j["S_LP_dot"] = opt_json(f.diag.S_LP_dot);
    j["S_HP_dot"] = f.diag.S_HP_dot;
    j["E_HP_dot"] = f.diag.E_HP_dot;
    return j;
}

FlowReport flows_from(const json& j) {
    FlowReport f;
    f.mu_H = j.at("mu_H");
    f.mu_L = j.at("mu_L");
    f.delta_mu = j.at("delta_mu");
    f.R_P_eff = j.at("R_P_eff");
    f.J_P = j.at("J_P");
    f.J_P_demanded = j.at("J_P_demanded");
    f.J_P_max = j.at("J_P_max");
    f.J_R = j.at("J_R");
    f.J_R_max = j.at("J_R_max");
    f.F_HP = j.at("F_HP");
    f.F_LP = j.at("F_LP");
    f.G = j.at("G");
    f.F_HR = j.at("F_HR");
    f.F_LR = j.at("F_LR");
    f.F_RIn = j.at("F_RIn");
    f.F_NR = j.at("F_NR");
    f.G_D = j.at("G_D");
    f.G_D_satisfied = j.at("G_D_satisfied");
    f.diag.eta = opt_from(j.at("eta"));
    f.diag.epsilon = opt_from(j.at("epsilon"));
    f.diag.S_dot = opt_from(j.at("S_dot"));
    f.diag.S_LP_dot = opt_from(j.at("S_LP_dot"));
    f.diag.S_HP_dot = j.at("S_HP_dot");
    f.diag.E_HP_dot = j.at("E_HP_dot");
    return f;
}

}  // namespace

std::string to_json(const RunRecord& record) {
    json j;
    j["status"] = record.status == RunStatus::Completed   ? "completed"
                  : record.status == RunStatus::Collapsed ? "collapsed"
                                                          : "step_rejected";
    j["end_time"] = record.end_time;
    j["message"] = record.message;
    j["warnings"] = record.warnings;
    j["clamped_matter"] = record.clamped_matter;
    json samples = json::array();
    for (const Sample& row : record.samples) {
        json r;
        r["t"] = row.t;
        json sheets = json::array();
        for (std::size_t i = 0; i < row.sheets.size(); ++i) {
            json s;
            s["X_H"] = row.sheets[i].X_H;
            s["X_L"] = row.sheets[i].X_L;
            s["X_S"] = row.sheets[i].X_S;
            s["flows"] = flows_json(row.flows[i]);
            sheets.push_back(s);
        }
        r["sheets"] = sheets;
        if (row.econ) {
            const EconSample& e = *row.econ;
            json ej;
            ej["omega"] = e.state.omega;
            ej["lambda"] = e.state.lambda;
            ej["N"] = e.state.N;
            ej["w"] = e.state.w;
            ej["Y"] = e.state.Y;
            ej["K"] = e.state.K;
            ej["a"] = e.state.a;
            ej["p"] = opt_json(e.p);
            ej["profit"] = e.profit;
            ej["investment"] = e.investment;
            ej["demand"] = e.demand;
            ej["delivered"] = e.delivered;
            ej["K_over_nuY_drift"] = e.capital_output_drift;
            r["econ"] = ej;
        }
        samples.push_back(r);
    }
    j["samples"] = samples;
    return j.dump() + "\n";
}

RunRecord record_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunRecord rec;
    const std::string status = j.at("status");
    rec.status = status == "completed"   ? RunStatus::Completed
                 : status == "collapsed" ? RunStatus::Collapsed
                                         : RunStatus::StepRejected;
    rec.end_time = j.at("end_time");
    rec.message = j.at("message");
    rec.warnings = j.at("warnings").get<std::vector<std::string>>();
    rec.clamped_matter = j.at("clamped_matter");
    for (const json& r : j.at("samples")) {
        Sample row;
        row.t = r.at("t");
        for (const json& s : r.at("sheets")) {
            SheetState st;
            st.X_H = s.at("X_H");
            st.X_L = s.at("X_L");
            st.X_S = s.at("X_S");
            FlowReport f = flows_from(s.at("flows"));
            st.J_P = f.J_P;
            row.sheets.push_back(st);
            row.flows.push_back(f);
        }
        if (r.contains("econ")) {
            const json& ej = r.at("econ");
            EconSample e;
            e.state.omega = ej.at("omega");
            e.state.lambda = ej.at("lambda");
            e.state.N = ej.at("N");
            e.state.w = ej.at("w");
            e.state.Y = ej.at("Y");
            e.state.K = ej.at("K");
            e.state.a = ej.at("a");
            e.p = opt_from(ej.at("p"));
            e.profit = ej.at("profit");
            e.investment = ej.at("investment");
            e.demand = ej.at("demand");
            e.delivered = ej.at("delivered");
            e.capital_output_drift = ej.at("K_over_nuY_drift");
            row.econ = e;
        }
        rec.samples.push_back(std::move(row));
    }
    return rec;
}

// ---------------------------------------------------------------------------
// SVG line charts

namespace {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x, y;
};

std::string render_chart(const std::string& title, const std::vector<Series>& series) {
    const double W = 720, H = 420;
    const double ML = 72, MR = 16, MT = 34, MB = 44;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            if (!any) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                any = true;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-family='sans-serif'"
        << " font-size='14'>" << title << "</text>\n";

    // axes and ticks
    svg << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='"
        << H - MB << "' stroke='black'/>\n"
        << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        char xbuf[32], ybuf[32];
        std::snprintf(xbuf, sizeof(xbuf), "%.4g", xv);
        std::snprintf(ybuf, sizeof(ybuf), "%.4g", yv);
        svg << "<line x1='" << px(xv) << "' y1='" << H - MB << "' x2='" << px(xv)
            << "' y2='" << H - MB + 5 << "' stroke='black'/>\n"
            << "<text x='" << px(xv) << "' y='" << H - MB + 18
            << "' text-anchor='middle' font-family='sans-serif' font-size='11'>" << xbuf
            << "</text>\n"
            << "<line x1='" << ML - 5 << "' y1='" << py(yv) << "' x2='" << ML << "' y2='"
            << py(yv) << "' stroke='black'/>\n"
            << "<text x='" << ML - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << ybuf
            << "</text>\n";
    }
    svg << "<text x='" << (ML + W - MR) / 2 << "' y='" << H - 8
        << "' text-anchor='middle' font-family='sans-serif' font-size='12'>t</text>\n";

    // polylines
    for (const Series& s : series) {
        svg << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        svg << "'/>\n";
    }

    // legend
    double ly = MT + 6;
    for (const Series& s : series) {
        svg << "<line x1='" << W - MR - 150 << "' y1='" << ly << "' x2='" << W - MR - 126
            << "' y2='" << ly << "' stroke='" << s.color << "' stroke-width='2'/>\n"
            << "<text x='" << W - MR - 120 << "' y='" << ly + 4
            << "' font-family='sans-serif' font-size='12'>" << s.label << "</text>\n";
        ly += 16;
    }
    svg << "</svg>\n";
    return svg.str();
}

template <typename Get>
Series make_series(const RunRecord& rec, const std::string& label,
                   const std::string& color, Get get) {
    Series s;
    s.label = label;
    s.color = color;
    for (const Sample& row : rec.samples) {
        const std::optional<double> v = get(row);
        if (!v) continue;
        s.x.push_back(row.t);
        s.y.push_back(*v);
    }
    return s;
}

const char* series_color(std::size_t i) {
    static const char* kColors[] = {"#1f77b4", "#2ca02c", "#d62728", "#17becf",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    return kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
}

}  // namespace

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path +
                                 "' for writing: " + std::strerror(errno));
    out << content;
    if (!out)
        throw std::runtime_error("write failed for '" + path +
                                 "': " + std::strerror(errno));
}

std::vector<std::string> emit_svg(const RunRecord& rec, const std::string& dir,
                                  const std::string& base) {
    std::vector<std::string> written;
    const std::size_t n = rec.sheet_count();
    auto emit = [&](const std::string& suffix, const std::string& title,
                    const std::vector<Series>& series) {
        const std::string path =
            (std::filesystem::path(dir) / (base + "_" + suffix + ".svg")).string();
        write_file(path, render_chart(title, series));
        written.push_back(path);
    };

    if (n > 0) {
        std::vector<Series> potentials, production, recycling, intensity;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string tag = n > 1 ? " s" + std::to_string(i) : "";
            auto flow = [i](const Sample& r) { return r.flows[i]; };
            potentials.push_back(make_series(rec, "mu_H" + tag, series_color(2 * i),
                                             [=](const Sample& r) { return std::optional(flow(r).mu_H); }));
            potentials.push_back(make_series(rec, "mu_L" + tag, series_color(2 * i + 1),
                                             [=](const Sample& r) { return std::optional(flow(r).mu_L); }));
            production.push_back(make_series(rec, "G" + tag, series_color(3 * i),
                                             [=](const Sample& r) { return std::optional(flow(r).G); }));
            production.push_back(make_series(rec, "G_D" + tag, series_color(3 * i + 1),
                                             [=](const Sample& r) { return std::optional(flow(r).G_D); }));
            production.push_back(make_series(rec, "buffer X_S" + tag, series_color(3 * i + 2),
                                             [=](const Sample& r) { return std::optional(r.sheets[i].X_S); }));
            auto norm = [i](const Sample& r, double v) -> std::optional<double> {
                return r.sheets[i].X_L > 0.0 ? std::optional(v / r.sheets[i].X_L)
                                             : std::nullopt;
            };
            recycling.push_back(make_series(rec, "F_HR/X_L" + tag, series_color(2 * i),
                                            [=](const Sample& r) { return norm(r, r.flows[i].F_HR); }));
            recycling.push_back(make_series(rec, "F_NR/X_L" + tag, series_color(2 * i + 1),
                                            [=](const Sample& r) { return norm(r, r.flows[i].F_NR); }));
            intensity.push_back(make_series(rec, "J_P" + tag, series_color(2 * i),
                                            [=](const Sample& r) { return std::optional(flow(r).J_P); }));
            intensity.push_back(make_series(rec, "J_P_max" + tag, series_color(2 * i + 1),
                                            [=](const Sample& r) { return std::optional(flow(r).J_P_max); }));
        }
        emit("potentials", "Potentials", potentials);
        emit("production", "Production vs demand", production);
        emit("recycling", "Recycling fluxes (normalized by X_L)", recycling);
        emit("intensity", "Intensity", intensity);
    }

    if (rec.has_econ()) {
        emit("output", "Output",
             {make_series(rec, "Y", series_color(0),
                          [](const Sample& r) { return std::optional(r.econ->state.Y); })});
        emit("price", "Price",
             {make_series(rec, "p", series_color(2),
                          [](const Sample& r) { return r.econ->p; })});
        emit("investment", "Investment",
             {make_series(rec, "I", series_color(3), [](const Sample& r) {
                 return std::optional(r.econ->investment);
             })});
        emit("shares", "Wage share and employment rate",
             {make_series(rec, "omega", series_color(4),
                          [](const Sample& r) { return std::optional(r.econ->state.omega); }),
              make_series(rec, "lambda", series_color(5), [](const Sample& r) {
                  return std::optional(r.econ->state.lambda);
              })});
    }
    return written;
}

}  // namespace thermoecon
