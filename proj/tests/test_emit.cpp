#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thermoecon/emit.hpp"
#include "thermoecon/scenario.hpp"

using namespace thermoecon;

namespace {

RunRecord short_run(const std::string& name, double horizon = 1.0) {
    ScenarioSpec spec = preset(name);
    spec.horizon = horizon;
    return run(spec);
}

std::size_t count_char(const std::string& s, char c) {
    std::size_t n = 0;
    for (char x : s) n += x == c;
    return n;
}

}  // namespace

// The column order is part of the output contract; plotting scripts key
// on it. Breaking this test means a deliberate format change.
TEST_CASE("csv: golden header for single-sheet and coupled runs") {
    CHECK(csv_header(1, false) ==
          "t,X_H,X_L,X_S,mu_H,mu_L,delta_mu,J_P,J_P_demanded,J_P_max,J_R,J_R_max,"
          "F_HP,F_LP,G,F_HR,F_LR,F_RIn,F_NR,F_HR_over_XL,F_NR_over_XL,"
          "G_D,G_D_satisfied,R_P_eff,eta,epsilon,S_dot,S_HP_dot,S_LP_dot,E_HP_dot");
    CHECK(csv_header(1, true) ==
          csv_header(1, false) +
              ",econ_omega,econ_lambda,econ_N,econ_w,econ_Y,econ_K,econ_a,"
              "econ_p,econ_profit,econ_investment,econ_demand,econ_delivered,"
              "econ_K_over_nuY_drift");
    // multi-sheet columns are prefixed per sheet
    const std::string two = csv_header(2, false);
    CHECK(two.find("s0_X_H") != std::string::npos);
    CHECK(two.find("s1_X_H") != std::string::npos);
}

TEST_CASE("csv: one row per sample, absent diagnostics as empty cells") {
    const RunRecord rec = short_run("case2-optimal");
    const std::string csv = to_csv(rec);
    std::istringstream lines(csv);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(count_char(csv, '\n') == rec.samples.size() + 1);
    CHECK(count_char(first, ',') == count_char(header, ','));
    // at t = 0 the sink is empty: S_dot and the X_L-normalized columns are blank
    CHECK(first.find(",,") != std::string::npos);
}

TEST_CASE("csv: an empty record is header-only") {
    CHECK(to_csv(RunRecord{}) == "t\n");
}

TEST_CASE("csv: two-sheet rows carry one cell per prefixed column") {
    ScenarioSpec spec = preset("case2-optimal");
    spec.sheets.push_back(spec.sheets[0]);
    spec.sheet_init.push_back(spec.sheet_init[0]);
    spec.sheets[1].params.n_P = 0.25;
    spec.horizon = 1.0;
    const RunRecord rec = run(spec);
    const std::string csv = to_csv(rec);
    std::istringstream lines(csv);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == csv_header(2, false));
    CHECK(count_char(first, ',') == count_char(header, ','));
}

TEST_CASE("json: a record survives the round trip unchanged") {
    for (const char* name : {"case1-max", "macro-2", "goodwin"}) {
        CAPTURE(name);
        const RunRecord rec = short_run(name);
        const RunRecord back = record_from_json(to_json(rec));
        REQUIRE(back.samples.size() == rec.samples.size());
        CHECK(back.status == rec.status);
        CHECK(back.end_time == rec.end_time);
        CHECK(back.clamped_matter == rec.clamped_matter);
        for (std::size_t i = 0; i < rec.samples.size(); ++i) {
            CAPTURE(i);
            CHECK(back.samples[i].t == rec.samples[i].t);
            REQUIRE(back.samples[i].sheets.size() == rec.samples[i].sheets.size());
            for (std::size_t k = 0; k < rec.samples[i].sheets.size(); ++k) {
                CHECK(back.samples[i].sheets[k].X_H == rec.samples[i].sheets[k].X_H);
                CHECK(back.samples[i].sheets[k].X_L == rec.samples[i].sheets[k].X_L);
                CHECK(back.samples[i].sheets[k].X_S == rec.samples[i].sheets[k].X_S);
                CHECK(back.samples[i].flows[k].G == rec.samples[i].flows[k].G);
                CHECK(back.samples[i].flows[k].diag.S_dot ==
                      rec.samples[i].flows[k].diag.S_dot);
                CHECK(back.samples[i].flows[k].diag.epsilon ==
                      rec.samples[i].flows[k].diag.epsilon);
            }
            CHECK(back.samples[i].econ.has_value() == rec.samples[i].econ.has_value());
            if (rec.samples[i].econ) {
                CHECK(back.samples[i].econ->state.Y == rec.samples[i].econ->state.Y);
                CHECK(back.samples[i].econ->p == rec.samples[i].econ->p);
            }
        }
    }
}

TEST_CASE("svg: panel files are written and are plausible svg") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "thermoecon_svg_test";
    fs::remove_all(dir);

    const RunRecord rec = short_run("macro-2");
    const std::vector<std::string> files = emit_svg(rec, dir.string(), "macro-2");
    // four sheet panels plus four economy panels
    CHECK(files.size() == 8);
    for (const std::string& f : files) {
        CAPTURE(f);
        REQUIRE(fs::exists(f));
        std::ifstream in(f);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string svg = buf.str();
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
    fs::remove_all(dir);

    const RunRecord goodwin = short_run("goodwin");
    const std::vector<std::string> econ_only =
        emit_svg(goodwin, dir.string(), "goodwin");
    CHECK(econ_only.size() == 4);
    fs::remove_all(dir);
}
