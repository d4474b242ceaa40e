#include "thermoecon/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermoecon {

namespace {

constexpr double kRejectTol = 1e-6;   // fraction of X_T a step may undershoot
constexpr double kRationTol = 1e-12;  // relative shortfall that counts as rationing

struct SheetDeriv {
    double X_H = 0.0, X_L = 0.0, X_S = 0.0, J_P = 0.0;
};

struct Derivs {
    std::vector<SheetDeriv> sheets;
    EconDerivative econ;
};

struct RunContext {
    double kappa = 0.0;
    double K0 = 0.0;
    bool coupled = false;
    bool friction_law = false;
    double friction_floor = 4e-5;
};

RunContext make_context(const ScenarioSpec& spec) {
    RunContext ctx;
    ctx.coupled = spec.mode == RunMode::Coupled;
    if (!ctx.coupled) return ctx;
    ctx.kappa = resolved_kappa(spec);
    ctx.K0 = spec.econ.nu * spec.econ_init.Y;
    ctx.friction_law = spec.coupling.friction_law;
    ctx.friction_floor = spec.coupling.friction_floor;
    return ctx;
}

TickResult tick_at(const SimState& state, const ScenarioSpec& spec,
                   const RunContext& ctx, double dt) {
    std::optional<FrictionContext> friction;
    double demand = spec.demand;
    if (ctx.coupled) {
        demand = demand_from_economy(std::max(state.econ->Y, 0.0), ctx.kappa);
        if (ctx.friction_law) friction = FrictionContext{state.econ->K, ctx.K0};
    }
    return resolve_tick(state.sheets, spec.sheets, demand, dt, friction,
                        ctx.friction_floor);
}

Derivs eval(const SimState& state, const ScenarioSpec& spec, const RunContext& ctx,
            double dt, TickResult* tick_out = nullptr) {
    Derivs d;
    d.sheets.resize(state.sheets.size());
    if (!spec.sheets.empty()) {
        TickResult tick = tick_at(state, spec, ctx, dt);
        for (std::size_t i = 0; i < state.sheets.size(); ++i) {
            const FlowReport& f = tick.sheets[i];
            const StockDerivative sd = stock_derivatives(f);
            d.sheets[i].X_H = sd.X_H;
            d.sheets[i].X_L = sd.X_L;
            d.sheets[i].X_S = sd.X_S;
            const double tau = spec.sheets[i].params.tau;
            d.sheets[i].J_P =
                tau > 0.0 ? (f.J_P_demanded - state.sheets[i].J_P) / tau : 0.0;
        }
        if (state.econ) {
            std::optional<double> delivered;
            if (ctx.coupled) delivered = deliver_to_economy(tick.delivered, ctx.kappa);
            d.econ = econ_derivatives(*state.econ, spec.econ, delivered);
        }
        if (tick_out) *tick_out = std::move(tick);
    } else if (state.econ) {
        d.econ = econ_derivatives(*state.econ, spec.econ);
    }
    return d;
}

SimState advanced(const SimState& base, const Derivs& k, double h) {
    SimState s = base;
    s.t = base.t + h;
    for (std::size_t i = 0; i < s.sheets.size(); ++i) {
        s.sheets[i].X_H += h * k.sheets[i].X_H;
        s.sheets[i].X_L += h * k.sheets[i].X_L;
        s.sheets[i].X_S += h * k.sheets[i].X_S;
        s.sheets[i].J_P += h * k.sheets[i].J_P;
    }
    if (s.econ) {
        s.econ->omega += h * k.econ.omega;
        s.econ->lambda += h * k.econ.lambda;
        s.econ->N += h * k.econ.N;
        s.econ->w += h * k.econ.w;
        s.econ->Y += h * k.econ.Y;
        s.econ->K += h * k.econ.K;
        s.econ->a += h * k.econ.a;
    }
    return s;
}

void accumulate(Derivs& sum, const Derivs& k, double weight) {
    for (std::size_t i = 0; i < sum.sheets.size(); ++i) {
        sum.sheets[i].X_H += weight * k.sheets[i].X_H;
        sum.sheets[i].X_L += weight * k.sheets[i].X_L;
        sum.sheets[i].X_S += weight * k.sheets[i].X_S;
        sum.sheets[i].J_P += weight * k.sheets[i].J_P;
    }
    sum.econ.omega += weight * k.econ.omega;
    sum.econ.lambda += weight * k.econ.lambda;
    sum.econ.N += weight * k.econ.N;
    sum.econ.w += weight * k.econ.w;
    sum.econ.Y += weight * k.econ.Y;
    sum.econ.K += weight * k.econ.K;
    sum.econ.a += weight * k.econ.a;
}

/// Zero small negative stocks, booking the deficit against the stock the
/// offending flow exchanges with; throws when the undershoot exceeds the
/// rejection tolerance.
double clamp_stocks(SimState& state, const ScenarioSpec& spec) {
    double moved = 0.0;
    for (std::size_t i = 0; i < state.sheets.size(); ++i) {
        const double X_T = spec.sheets[i].params.X_T;
        SheetState& s = state.sheets[i];
        auto fix = [&](double& stock, double& paired, const char* name) {
            if (stock >= 0.0) return;
            if (stock < -kRejectTol * X_T) {
                std::ostringstream msg;
                msg << "step rejected at t=" << state.t << ": sheet " << i << " " << name
                    << " = " << stock << " (dt too large)";
                throw StepRejected(state.t, msg.str());
            }
            paired += stock;
            moved -= stock;
            stock = 0.0;
        };
        fix(s.X_H, s.X_L, "X_H");
        fix(s.X_S, s.X_L, "X_S");
        fix(s.X_L, s.X_H, "X_L");
        if (s.X_H < 0.0) {  // pathological double underflow; zero into the sink
            fix(s.X_H, s.X_L, "X_H");
        }
    }
    return moved;
}

}  // namespace

StockDerivative stock_derivatives(const FlowReport& f) {
    StockDerivative d;
    d.X_H = f.F_NR - f.F_HP + f.F_HR - f.F_RIn;
    d.X_L = -f.F_NR + f.F_LP - f.F_LR + f.G_D_satisfied;
    d.X_S = f.G - f.G_D_satisfied;
    return d;
}

double resolved_kappa(const ScenarioSpec& spec) {
    if (spec.coupling.kappa > 0.0) return spec.coupling.kappa;
    // Calibrate at t = 0: initial demand sits at demand_fraction of the
    // aggregate attainable maximum.
    double delta_mu_agg = 0.0;
    double R_agg = 0.0;
    for (std::size_t i = 0; i < spec.sheets.size(); ++i) {
        const SheetParams& p = spec.sheets[i].params;
        const SheetInit init =
            i < spec.sheet_init.size() ? spec.sheet_init[i] : SheetInit{};
        const double X_H0 = init.X_H < 0.0 ? p.X_T : init.X_H;
        const double mu_H = operating_potential(X_H0, p);
        const double mu_L = operating_potential(init.X_L, p);
        const double R_P0 =
            spec.coupling.friction_law ? p.R_P + spec.coupling.friction_floor : p.R_P;
        delta_mu_agg += p.n_P * (mu_H - mu_L);
        R_agg += p.n_P * p.n_P * R_P0;
    }
    const double G_max0 = max_production(delta_mu_agg, R_agg);
    if (!(G_max0 > 0.0))
        throw std::invalid_argument(
            "coupling.kappa: cannot calibrate, initial attainable production is 0");
    return spec.coupling.demand_fraction * G_max0 / spec.econ_init.Y;
}

SimState initial_state(const ScenarioSpec& spec) {
    spec.validate();
    SimState s;
    s.t = 0.0;
    s.sheets.reserve(spec.sheets.size());
    for (std::size_t i = 0; i < spec.sheets.size(); ++i) {
        const SheetInit init =
            i < spec.sheet_init.size() ? spec.sheet_init[i] : SheetInit{};
        SheetState st;
        st.X_H = init.X_H < 0.0 ? spec.sheets[i].params.X_T : init.X_H;
        st.X_L = init.X_L;
        st.X_S = init.X_S;
        st.J_P = init.J_P;
        s.sheets.push_back(st);
    }
    if (spec.mode != RunMode::SheetOnly) {
        const EconInit& e = spec.econ_init;
        s.econ = make_econ_state(spec.econ, e.omega, e.lambda, e.N, e.w, e.Y);
    }
    return s;
}

double step(SimState& state, const ScenarioSpec& spec, double dt) {
    const RunContext ctx = make_context(spec);

    // Rationing acts on the state itself: output is knocked down to what
    // the sheets actually delivered before the step is taken.
    if (ctx.coupled) {
        const TickResult now = tick_at(state, spec, ctx, dt);
        if (now.delivered < now.demand * (1.0 - kRationTol))
            state.econ->Y = deliver_to_economy(now.delivered, ctx.kappa);
    }

    const double t0 = state.t;
    const Derivs k1 = eval(state, spec, ctx, dt);
    const Derivs k2 = eval(advanced(state, k1, 0.5 * dt), spec, ctx, dt);
    const Derivs k3 = eval(advanced(state, k2, 0.5 * dt), spec, ctx, dt);
    const Derivs k4 = eval(advanced(state, k3, dt), spec, ctx, dt);

    Derivs total = k1;
    accumulate(total, k2, 2.0);
    accumulate(total, k3, 2.0);
    accumulate(total, k4, 1.0);
    state = advanced(state, total, dt / 6.0);
    state.t = t0 + dt;

    return clamp_stocks(state, spec);
}

RunRecord run(const ScenarioSpec& spec) {
    spec.validate();
    const RunContext ctx = make_context(spec);
    SimState state = initial_state(spec);

    RunRecord rec;
    const long long n_steps = std::llround(spec.horizon / spec.dt);
    const long long stride = std::max(1, spec.output_stride);

    bool warned_lambda = false, warned_omega = false;
    double dead_since = -1.0;

    auto sample_now = [&](const SimState& s) {
        Sample row;
        row.t = s.t;
        row.sheets = s.sheets;
        TickResult tick;
        if (!spec.sheets.empty()) {
            tick = tick_at(s, spec, ctx, spec.dt);
            row.flows = tick.sheets;
            for (std::size_t i = 0; i < row.sheets.size(); ++i)
                row.sheets[i].J_P = tick.sheets[i].J_P;
        }
        if (s.econ) {
            EconSample e;
            e.state = *s.econ;
            if (s.econ->Y > 0.0) {
                e.p = price(s.econ->w, s.econ->labor(), s.econ->Y, spec.econ.m);
                const ProfitInvestment pi = profit_and_investment(*s.econ, spec.econ);
                e.profit = pi.profit;
                e.investment = pi.investment;
                e.capital_output_drift =
                    s.econ->K / (spec.econ.nu * s.econ->Y) - 1.0;
            }
            e.demand = tick.demand;
            e.delivered = tick.delivered;
            row.econ = e;
        }
        rec.samples.push_back(std::move(row));

        if (s.econ && !warned_lambda && s.econ->lambda > 1.0 + 1e-9) {
            warned_lambda = true;
            std::ostringstream w;
            w << "employment rate exceeded 1 at t=" << s.t;
            rec.warnings.push_back(w.str());
        }
        if (s.econ && !warned_omega &&
            (s.econ->omega <= 0.0 || s.econ->omega > 1.5)) {
            warned_omega = true;
            std::ostringstream w;
            w << "wage share left the plausible band (0, 1.5] at t=" << s.t;
            rec.warnings.push_back(w.str());
        }

        // Collapse watch: dead output (coupled / macro runs) or dead
        // production against live demand (sheet runs).
        bool dead = false;
        if (s.econ && s.econ->Y <= 0.0) dead = true;
        if (!spec.sheets.empty() && tick.demand > 0.0) {
            double total_G = 0.0;
            for (const FlowReport& f : tick.sheets) total_G += f.G;
            if (total_G <= 0.0) dead = true;
        }
        if (dead) {
            if (dead_since < 0.0) dead_since = s.t;
        } else {
            dead_since = -1.0;
        }
        return dead_since >= 0.0 && s.t - dead_since >= spec.grace_window;
    };

    sample_now(state);
    for (long long k = 1; k <= n_steps; ++k) {
        try {
            rec.clamped_matter += step(state, spec, spec.dt);
        } catch (const StepRejected& e) {
            rec.status = RunStatus::StepRejected;
            rec.message = e.what();
            rec.end_time = e.time();
            return rec;
        }
        state.t = static_cast<double>(k) * spec.dt;  // keep timestamps exact
        if (k % stride == 0) {
            if (sample_now(state)) {
                rec.status = RunStatus::Collapsed;
                std::ostringstream msg;
                msg << "collapsed at t=" << state.t;
                rec.message = msg.str();
                break;
            }
        }
    }
    rec.end_time = state.t;
    return rec;
}

}  // namespace thermoecon
