#include <benchmark/benchmark.h>

#include "thermoecon/integrator.hpp"
#include "thermoecon/scenario.hpp"

using namespace thermoecon;

static void BM_PotentialPair(benchmark::State& state) {
    SheetParams p;
    double x = 0.0;
    for (auto _ : state) {
        x += 1.0;
        if (x > p.X_T) x = 0.0;
        benchmark::DoNotOptimize(operating_potential(x, p));
    }
}
BENCHMARK(BM_PotentialPair);

static void BM_DemandQuadratic(benchmark::State& state) {
    double g = 0.0;
    for (auto _ : state) {
        g += 0.03;
        if (g > 240.0) g = 0.0;
        benchmark::DoNotOptimize(solve_demand_intensity(1.0, 1e-3, g));
    }
}
BENCHMARK(BM_DemandQuadratic);

static void BM_ResolveTick(benchmark::State& state) {
    const ScenarioSpec spec = preset("case2-optimal");
    SheetState st;
    st.X_H = 600.0;
    st.X_L = 350.0;
    st.X_S = 50.0;
    const std::vector<SheetState> states{st};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            resolve_tick(states, spec.sheets, spec.demand, spec.dt, std::nullopt));
}
BENCHMARK(BM_ResolveTick);

static void BM_StepSheetOnly(benchmark::State& state) {
    const ScenarioSpec spec = preset("case2-optimal");
    SimState s = initial_state(spec);
    for (auto _ : state) {
        step(s, spec, spec.dt);
        if (s.t > 50.0) s = initial_state(spec);
    }
}
BENCHMARK(BM_StepSheetOnly);

static void BM_StepCoupled(benchmark::State& state) {
    const ScenarioSpec spec = preset("macro-2");
    SimState s = initial_state(spec);
    for (auto _ : state) {
        step(s, spec, spec.dt);
        if (s.t > 50.0) s = initial_state(spec);
    }
}
BENCHMARK(BM_StepCoupled);

BENCHMARK_MAIN();
