#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "thermoecon/coupling.hpp"

using namespace thermoecon;

namespace {

SheetSpec default_sheet(IntensityMode mode = IntensityMode::Optimal) {
    SheetSpec s;
    s.policy.mode = mode;
    return s;
}

SheetState full_well(const SheetSpec& s) {
    SheetState st;
    st.X_H = s.params.X_T;
    return st;
}

}  // namespace

TEST_CASE("friction_from_capital: anchors, floor and monotonicity") {
    CHECK(friction_from_capital(5.0, 5.0, 1e-3) == doctest::Approx(1e-3 + 4e-5));
    CHECK(friction_from_capital(2.0, 1.0, 1e-3) == doctest::Approx(5.4e-4).epsilon(1e-12));
    CHECK(friction_from_capital(1e18, 1.0, 1e-3) == doctest::Approx(4e-5).epsilon(1e-6));
    CHECK_THROWS_AS(friction_from_capital(0.0, 1.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(friction_from_capital(-2.0, 1.0, 1e-3), std::domain_error);

    double prev = friction_from_capital(0.5, 1.0, 1e-3);
    for (double K = 1.0; K < 1e6; K *= 3.0) {
        const double f = friction_from_capital(K, 1.0, 1e-3);
        CHECK(f < prev);
        CHECK(f > 4e-5);
        prev = f;
    }
}

TEST_CASE("demand bridge: round trip and linearity") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double Y = unit(rng) * 1e12;
        const double kappa = std::pow(10.0, -12.0 + 10.0 * unit(rng));
        CHECK(deliver_to_economy(demand_from_economy(Y, kappa), kappa) ==
              doctest::Approx(Y).epsilon(1e-12));
    }
    CHECK(demand_from_economy(0.0, 3e-11) == 0.0);
    CHECK(deliver_to_economy(0.0, 3e-11) == 0.0);
    const double half = demand_from_economy(100.0, 0.5);
    CHECK(half == doctest::Approx(50.0));
}

TEST_CASE("fan_out_intensity: proportional shares") {
    std::vector<SheetSpec> sheets(3);
    sheets[0].params.n_P = 1.0;
    sheets[1].params.n_P = 0.5;
    sheets[2].params.n_P = 0.0;
    const std::vector<double> j = fan_out_intensity(80.0, sheets);
    REQUIRE(j.size() == 3);
    CHECK(j[0] == doctest::Approx(80.0));
    CHECK(j[1] == doctest::Approx(40.0));
    CHECK(j[2] == 0.0);  // a zero-share sheet idles
}

TEST_CASE("resolve_tick: single full-well sheet reproduces the closed forms") {
    const SheetSpec sheet = default_sheet();
    const SheetState st = full_well(sheet);

    SUBCASE("optimal policy at met demand") {
        const TickResult tick = resolve_tick({st}, {sheet}, 30.0, 1e-3, std::nullopt);
        REQUIRE(tick.sheets.size() == 1);
        const FlowReport& f = tick.sheets[0];
        CHECK(f.mu_H == doctest::Approx(1.0));
        CHECK(f.mu_L == 0.0);
        CHECK(f.J_P == doctest::Approx(30.958424017657048).epsilon(1e-12));
        CHECK(f.G == doctest::Approx(30.0).epsilon(1e-9));
        CHECK(f.G_D == doctest::Approx(30.0));
        CHECK(f.G_D_satisfied == doctest::Approx(30.0));
        CHECK(tick.delivered == doctest::Approx(tick.demand));
        CHECK(f.J_R == 0.0);  // empty sink, nothing to recycle
    }
    SUBCASE("max-intensity policy sits at the vertex") {
        SheetSpec max_sheet = default_sheet(IntensityMode::MaxIntensity);
        const TickResult tick = resolve_tick({st}, {max_sheet}, 30.0, 1e-3, std::nullopt);
        CHECK(tick.sheets[0].J_P == doctest::Approx(500.0));
        CHECK(tick.sheets[0].G == doctest::Approx(250.0));
        CHECK(tick.sheets[0].G_D_satisfied == doctest::Approx(30.0));
    }
    SUBCASE("fractional policy takes a share of the optimal root") {
        SheetSpec weak = default_sheet(IntensityMode::FractionOfOptimal);
        weak.policy.fraction = 0.2;
        const TickResult tick = resolve_tick({st}, {weak}, 30.0, 1e-3, std::nullopt);
        CHECK(tick.sheets[0].J_P ==
              doctest::Approx(0.2 * 30.958424017657048).epsilon(1e-12));
        // too slow to meet demand, nothing buffered: delivery is rationed
        CHECK(tick.sheets[0].G_D_satisfied == doctest::Approx(tick.sheets[0].G));
    }
    SUBCASE("infeasible demand falls back to the vertex") {
        const TickResult tick = resolve_tick({st}, {sheet}, 400.0, 1e-3, std::nullopt);
        CHECK(tick.sheets[0].J_P == doctest::Approx(500.0));
        CHECK(tick.delivered == doctest::Approx(250.0));
    }
}

TEST_CASE("resolve_tick: recycling modes") {
    SheetSpec sheet = default_sheet();
    SheetState st;
    st.X_H = 600.0;
    st.X_L = 400.0;

    SUBCASE("at_max runs the recycler at its admissible maximum") {
        const TickResult tick = resolve_tick({st}, {sheet}, 10.0, 1e-3, std::nullopt);
        const FlowReport& f = tick.sheets[0];
        CHECK(f.J_R == doctest::Approx(f.J_R_max));
        CHECK(f.J_R_max ==
              doctest::Approx(recycling_max_intensity(f.mu_L, sheet.params.R_R)));
        CHECK(f.F_LR > 0.0);
    }
    SUBCASE("proportional follows the sheet's own intensity under the cap") {
        sheet.policy.recycling = RecyclingMode::Proportional;
        sheet.params.n_R = 0.5;
        const TickResult tick = resolve_tick({st}, {sheet}, 10.0, 1e-3, std::nullopt);
        const FlowReport& f = tick.sheets[0];
        CHECK(f.J_R == doctest::Approx(std::min(0.5 * f.J_P_demanded, f.J_R_max)));
    }
    SUBCASE("proportional recycling tracks a max-intensity engine") {
        sheet.policy.mode = IntensityMode::MaxIntensity;
        sheet.policy.recycling = RecyclingMode::Proportional;
        sheet.params.n_R = 1.0;
        const TickResult tick = resolve_tick({st}, {sheet}, 10.0, 1e-3, std::nullopt);
        const FlowReport& f = tick.sheets[0];
        CHECK(f.J_P_demanded == doctest::Approx(f.J_P_max));
        CHECK(f.J_R == doctest::Approx(std::min(f.J_P_max, f.J_R_max)));
    }
    SUBCASE("n_R = 0 switches the recycler off in either mode") {
        sheet.params.n_R = 0.0;
        for (RecyclingMode mode : {RecyclingMode::AtMax, RecyclingMode::Proportional}) {
            sheet.policy.recycling = mode;
            const TickResult tick = resolve_tick({st}, {sheet}, 10.0, 1e-3, std::nullopt);
            CHECK(tick.sheets[0].J_R == 0.0);
            CHECK(tick.sheets[0].F_HR == 0.0);
            CHECK(tick.sheets[0].F_LR == 0.0);
        }
    }
}

TEST_CASE("resolve_tick: two sheets split the aggregate demand") {
    std::vector<SheetSpec> sheets(2, default_sheet());
    sheets[1].params.n_P = 0.5;
    const std::vector<SheetState> states{full_well(sheets[0]), full_well(sheets[1])};

    const double demand = 40.0;
    const TickResult tick = resolve_tick(states, sheets, demand, 1e-3, std::nullopt);

    // fan-out proportionality
    CHECK(tick.sheets[0].J_P == doctest::Approx(1.0 * tick.J_global));
    CHECK(tick.sheets[1].J_P == doctest::Approx(0.5 * tick.J_global));

    // the aggregate root meets total demand: sum of G equals G_D
    const double total_G = tick.sheets[0].G + tick.sheets[1].G;
    CHECK(total_G == doctest::Approx(demand).epsilon(1e-9));
    CHECK(tick.delivered == doctest::Approx(demand).epsilon(1e-9));

    // demand allocation follows production shares
    CHECK(tick.sheets[0].G_D ==
          doctest::Approx(demand * tick.sheets[0].G / total_G).epsilon(1e-9));

    // single-sheet equivalence: one sheet with the same aggregate quadratic
    // would operate at the same global intensity
    const double delta_mu_agg = tick.sheets[0].delta_mu + 0.5 * tick.sheets[1].delta_mu;
    const double R_agg = sheets[0].params.R_P + 0.25 * sheets[1].params.R_P;
    CHECK(tick.J_global ==
          doctest::Approx(optimal_intensity(delta_mu_agg, R_agg, demand)).epsilon(1e-12));
}

TEST_CASE("resolve_tick: idle production still serves demand from buffers") {
    SheetSpec sheet = default_sheet();
    SheetState st;
    st.X_H = 0.0;   // well exhausted
    st.X_L = 900.0;
    st.X_S = 100.0; // inventories remain
    const TickResult tick = resolve_tick({st}, {sheet}, 5.0, 1e-3, std::nullopt);
    CHECK(tick.sheets[0].G <= 0.0);
    CHECK(tick.sheets[0].G_D == doctest::Approx(5.0));
    CHECK(tick.sheets[0].G_D_satisfied == doctest::Approx(5.0));
}

TEST_CASE("resolve_tick: capital law overrides the configured friction") {
    const SheetSpec sheet = default_sheet();
    const SheetState st = full_well(sheet);
    FrictionContext friction{2.0, 1.0};  // capital doubled since t0
    const TickResult tick = resolve_tick({st}, {sheet}, 10.0, 1e-3, friction);
    CHECK(tick.sheets[0].R_P_eff == doctest::Approx(5.4e-4).epsilon(1e-12));
    const TickResult plain = resolve_tick({st}, {sheet}, 10.0, 1e-3, std::nullopt);
    CHECK(plain.sheets[0].R_P_eff == doctest::Approx(1e-3));
}
