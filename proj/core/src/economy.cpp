#include "thermoecon/economy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace thermoecon {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("EconParams: ") + what);
}

}  // namespace

void EconParams::validate() const {
    require(nu > 0.0, "nu must be > 0");
    require(delta >= 0.0, "delta must be >= 0");
    require(phi1 > 0.0, "phi1 must be > 0");
    require(m > -1.0, "m must be > -1");
    require(P_N > 0.0, "P_N must be > 0");
    require(q >= 0.0, "q must be >= 0");
}

EconState make_econ_state(const EconParams& params, double omega, double lambda,
                          double N, double w, double Y) {
    if (!(lambda > 0.0) || !(N > 0.0) || !(Y > 0.0))
        throw std::invalid_argument("EconState: lambda, N and Y must be > 0");
    EconState s;
    s.omega = omega;
    s.lambda = lambda;
    s.N = N;
    s.w = w;
    s.Y = Y;
    s.a = Y / (lambda * N);  // productivity consistent with initial employment
    s.K = params.nu * Y;
    return s;
}

double phillips(const EconParams& params, double lambda) {
    return params.phi0 + params.phi1 * lambda;
}

double population_growth_rate(const EconParams& params, double N) {
    return params.q * (1.0 - N / params.P_N);
}

EconDerivative econ_derivatives(const EconState& state, const EconParams& params,
                                std::optional<double> delivered_output) {
    const double Y = delivered_output.value_or(state.Y);
    const double n = population_growth_rate(params, state.N);
    const double phi = phillips(params, state.lambda);
    const double accumulation = (1.0 - state.omega) / params.nu;

    EconDerivative d;
    d.omega = state.omega * (phi - params.alpha_g);
    d.lambda = state.lambda * (accumulation - params.alpha_g - n - params.delta);
    d.N = n * state.N;
    d.a = params.alpha_g * state.a;
    d.w = state.w * phi;
    d.Y = Y * (accumulation - params.delta);
    d.K = Y * (1.0 - state.omega) - params.delta * state.K;
    return d;
}

double price(double w, double L, double Y, double m) {
    if (!(Y > 0.0)) throw std::domain_error("economy collapsed");
    return (1.0 + m) * w * L / Y;
}

ProfitInvestment profit_and_investment(const EconState& state, const EconParams& params) {
    const double L = state.labor();
    const double p = price(state.w, L, state.Y, params.m);
    ProfitInvestment out;
    out.profit = p * state.Y - state.w * L;
    out.investment = state.Y * (1.0 - state.omega);
    return out;
}

SfcBalances sfc_balances(const EconState& state, const EconParams& params) {
    const double L = state.labor();
    const double p = price(state.w, L, state.Y, params.m);
    const ProfitInvestment pi = profit_and_investment(state, params);

    SfcBalances b;
    b.wage_bill = state.w * L;
    b.investment_outlay = p * pi.investment;
    b.consumption_outlay = p * state.Y - b.investment_outlay;  // Say's law closure
    b.household_saving = b.wage_bill - b.consumption_outlay;
    b.firm_profit = pi.profit;
    return b;
}

}  // namespace thermoecon
