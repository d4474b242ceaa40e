#include "thermoecon/sheet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace thermoecon {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SheetParams: ") + what);
}

}  // namespace

void SheetParams::validate() const {
    require(std::isfinite(X_T) && X_T > 0.0, "X_T must be > 0");
    require(alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
    require(r >= 0.0, "r must be >= 0");
    require(s >= 0.0 && s <= 1.0, "s must be in [0, 1]");
    require(R_P > 0.0, "R_P must be > 0");
    require(R_R > 0.0, "R_R must be > 0");
    require(n_P >= 0.0, "n_P must be >= 0");
    require(n_R >= 0.0, "n_R must be >= 0");
    require(tau >= 0.0, "tau must be >= 0");
}

double potential(double stock, const SheetParams& params) {
    const double tol = kDomainTol * params.X_T;
    if (stock < -tol || stock > params.X_T + tol)
        throw std::domain_error("potential: stock outside [0, X_T]");
    if (stock < 0.0) stock = 0.0;
    if (stock > params.X_T) stock = params.X_T;
    return std::tanh(params.alpha * stock / params.X_T);
}

double operating_potential(double stock, const SheetParams& params) {
    const double mu = potential(stock, params);
    return params.normalized_potentials ? mu / std::tanh(params.alpha) : mu;
}

ProductionFlows production_flows(double mu_H, double mu_L, double R_P, double J_P) {
    ProductionFlows f;
    f.F_HP = mu_H * J_P;
    f.F_LP = mu_L * J_P + R_P * J_P * J_P;
    f.G = f.F_HP - f.F_LP;
    return f;
}

ProductionFlows production_flows(const SheetState& state, const SheetParams& params,
                                 double J_P) {
    return production_flows(operating_potential(state.X_H, params),
                            operating_potential(state.X_L, params), params.R_P, J_P);
}

double max_production_intensity(double delta_mu, double R_P) {
    return delta_mu > 0.0 ? delta_mu / (2.0 * R_P) : 0.0;
}

double max_production(double delta_mu, double R_P) {
    return delta_mu > 0.0 ? delta_mu * delta_mu / (4.0 * R_P) : 0.0;
}

RecyclingFlows forced_recycling_flows(double mu_H, double mu_L, double R_R, double J_R) {
    RecyclingFlows f;
    f.F_HR = mu_H * J_R;
    f.F_LR = mu_L * J_R - R_R * J_R * J_R;
    f.F_RIn = f.F_HR - f.F_LR;
    if (f.F_LR < 0.0)
        throw std::domain_error("forced_recycling_flows: J_R beyond the physical range");
    return f;
}

RecyclingFlows forced_recycling_flows(const SheetState& state, const SheetParams& params,
                                      double J_R) {
    return forced_recycling_flows(operating_potential(state.X_H, params),
                                  operating_potential(state.X_L, params), params.R_R, J_R);
}

double recycling_max_intensity(double mu_L, double R_R) {
    return mu_L / (2.0 * R_R);
}

double natural_recycling(double X_H, const SheetParams& params) {
    const double T_H = X_H / params.X_T;
    const double logistic = params.r * X_H * (1.0 - T_H);
    if (params.s <= 0.0) return logistic;  // plain Verhulst limit
    return logistic * (T_H / params.s - 1.0);
}

double natural_recycling(const SheetState& state, const SheetParams& params) {
    return natural_recycling(state.X_H, params);
}

SheetDiagnostics sheet_diagnostics(double mu_H, double mu_L, double R_P, double J_P) {
    SheetDiagnostics d;
    const double delta_mu = mu_H - mu_L;
    // G / J_P, evaluated in the cancellation-free form; dividing the flow
    // difference F_HP - F_LP would lose digits once the potentials saturate
    const double net_force = delta_mu - R_P * J_P;

    d.S_HP_dot = J_P;
    d.E_HP_dot = delta_mu * J_P;

    if (mu_H * J_P > 0.0) d.eta = net_force / mu_H;
    if (d.E_HP_dot > 0.0) d.epsilon = net_force / delta_mu;

    const double dissipation = R_P * J_P * J_P;
    if (dissipation == 0.0) {
        d.S_dot = 0.0;  // reversible engine, no sink gauge needed
    } else if (mu_L >= kEpsDiv) {
        d.S_dot = dissipation / mu_L;
    }
    if (d.S_dot) d.S_LP_dot = J_P + *d.S_dot;
    return d;
}

SheetDiagnostics sheet_diagnostics(const SheetState& state, const SheetParams& params,
                                   double J_P) {
    return sheet_diagnostics(operating_potential(state.X_H, params),
                             operating_potential(state.X_L, params), params.R_P, J_P);
}

}  // namespace thermoecon
