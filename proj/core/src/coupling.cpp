#include "thermoecon/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermoecon {

void CouplingParams::validate() const {
    if (kappa < 0.0) throw std::invalid_argument("CouplingParams: kappa must be >= 0");
    if (!(demand_fraction > 0.0))
        throw std::invalid_argument("CouplingParams: demand_fraction must be > 0");
    if (friction_floor < 0.0)
        throw std::invalid_argument("CouplingParams: friction_floor must be >= 0");
}

double friction_from_capital(double K, double K0, double R_P0, double floor) {
    if (!(K > 0.0)) throw std::domain_error("capital exhausted");
    return R_P0 * K0 / K + floor;
}

double demand_from_economy(double Y, double kappa) {
    return kappa * Y;
}

double deliver_to_economy(double G_satisfied, double kappa) {
    return G_satisfied / kappa;
}

std::vector<double> fan_out_intensity(double J_global, const std::vector<SheetSpec>& sheets) {
    std::vector<double> out;
    out.reserve(sheets.size());
    for (const SheetSpec& s : sheets) out.push_back(s.params.n_P * J_global);
    return out;
}

namespace {

double clamp_stock(double x, double X_T) {
    return std::clamp(x, 0.0, X_T);
}

double demanded_intensity(const IntensityPolicy& policy, double fanned, double j_max) {
    switch (policy.mode) {
        case IntensityMode::MaxIntensity:
            return j_max;
        case IntensityMode::Optimal:
            return std::min(fanned, j_max);
        case IntensityMode::FractionOfOptimal:
            return policy.fraction * std::min(fanned, j_max);
    }
    return j_max;
}

}  // namespace

TickResult resolve_tick(const std::vector<SheetState>& states,
                        const std::vector<SheetSpec>& sheets, double G_D_total,
                        double dt, const std::optional<FrictionContext>& friction,
                        double friction_floor) {
    TickResult tick;
    const std::size_t n = sheets.size();
    tick.sheets.resize(n);
    tick.demand = G_D_total;

    // Potentials, effective frictions and the aggregate quadratic. Under
    // the n_P fan-out the sheets' parabolas sum to one quadratic in the
    // global intensity; its lower root meets total demand.
    double delta_mu_agg = 0.0;
    double R_agg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const SheetParams& p = sheets[i].params;
        FlowReport& f = tick.sheets[i];
        f.mu_H = operating_potential(clamp_stock(states[i].X_H, p.X_T), p);
        f.mu_L = operating_potential(clamp_stock(states[i].X_L, p.X_T), p);
        f.delta_mu = f.mu_H - f.mu_L;
        f.R_P_eff = friction ? friction_from_capital(friction->K, friction->K0, p.R_P,
                                                     friction_floor)
                             : p.R_P;
        f.J_P_max = max_production_intensity(f.delta_mu, f.R_P_eff);
        f.J_R_max = recycling_max_intensity(f.mu_L, p.R_R);
        delta_mu_agg += p.n_P * f.delta_mu;
        R_agg += p.n_P * p.n_P * f.R_P_eff;
    }
    tick.J_global = R_agg > 0.0 ? optimal_intensity(delta_mu_agg, R_agg, G_D_total) : 0.0;

    // Per-sheet operating points and engine flows.
    for (std::size_t i = 0; i < n; ++i) {
        const SheetParams& p = sheets[i].params;
        FlowReport& f = tick.sheets[i];

        f.J_P_demanded = demanded_intensity(sheets[i].policy, p.n_P * tick.J_global,
                                            f.J_P_max);
        f.J_P = p.tau > 0.0 ? std::max(states[i].J_P, 0.0) : f.J_P_demanded;

        const ProductionFlows prod = production_flows(f.mu_H, f.mu_L, f.R_P_eff, f.J_P);
        f.F_HP = prod.F_HP;
        f.F_LP = prod.F_LP;
        f.G = prod.G;

        if (p.n_R > 0.0) {
            if (sheets[i].policy.recycling == RecyclingMode::AtMax) {
                f.J_R = f.J_R_max;
            } else {
                // J_R = n_R J with the same per-sheet J that drives
                // production (J_P_demanded = n_P J), capped at the
                // admissible maximum
                const double j_shared =
                    p.n_P > 0.0 ? f.J_P_demanded / p.n_P : tick.J_global;
                f.J_R = std::min(p.n_R * j_shared, f.J_R_max);
            }
        }
        const RecyclingFlows rec = forced_recycling_flows(f.mu_H, f.mu_L, p.R_R, f.J_R);
        f.F_HR = rec.F_HR;
        f.F_LR = rec.F_LR;
        f.F_RIn = rec.F_RIn;

        f.F_NR = natural_recycling(clamp_stock(states[i].X_H, p.X_T), p);
        f.diag = sheet_diagnostics(f.mu_H, f.mu_L, f.R_P_eff, f.J_P);
    }

    // Allocate demand across sheets: by production share, falling back to
    // inventory share, then to n_P share, so idle sheets with stocked
    // buffers still serve demand.
    double weight_sum = 0.0;
    std::vector<double> weight(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) weight_sum += weight[i] = std::max(tick.sheets[i].G, 0.0);
    if (weight_sum <= 0.0) {
        weight_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            weight_sum += weight[i] = std::max(states[i].X_S, 0.0);
    }
    if (weight_sum <= 0.0) {
        weight_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) weight_sum += weight[i] = sheets[i].params.n_P;
    }

    for (std::size_t i = 0; i < n; ++i) {
        FlowReport& f = tick.sheets[i];
        f.G_D = weight_sum > 0.0 ? G_D_total * (weight[i] / weight_sum) : 0.0;
        f.G_D_satisfied = satisfied_demand(f.G, f.G_D, std::max(states[i].X_S, 0.0), dt);
        tick.delivered += f.G_D_satisfied;
    }
    return tick;
}

}  // namespace thermoecon
