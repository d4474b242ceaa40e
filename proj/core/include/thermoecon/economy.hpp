#ifndef THERMOECON_ECONOMY_HPP
#define THERMOECON_ECONOMY_HPP

#include <optional>

namespace thermoecon {

/// Goodwin macroeconomy constants (two sectors, fixed markup pricing).
struct EconParams {
    double nu = 2.89;        ///< capital-to-output ratio K/Y
    double alpha_g = 2.26e-2;///< labor productivity growth rate [1/time]
    double q = 2.7e-2;       ///< population growth speed [1/time]
    double P_N = 7.059e9;    ///< population ceiling [persons]
    double delta = 6.25e-2;  ///< capital depreciation [1/time]
    double phi0 = -0.73;     ///< Phillips curve intercept
    double phi1 = 1.08;      ///< Phillips curve slope
    double m = 0.2;          ///< price markup over unit labor cost

    void validate() const;
};

struct EconState {
    double omega = 0.58;   ///< wage share
    double lambda = 0.69;  ///< employment rate
    double N = 4.55e9;     ///< workforce [persons]
    double w = 11.98;      ///< wage
    double Y = 64.45e9;    ///< real output
    double K = 0.0;        ///< capital stock
    double a = 0.0;        ///< labor productivity

    /// Employed labor L = lambda * N.
    double labor() const { return lambda * N; }
};

struct EconDerivative {
    double omega = 0.0, lambda = 0.0, N = 0.0, w = 0.0, Y = 0.0, K = 0.0, a = 0.0;
};

/// Build a consistent initial state from the five listed quantities:
/// a = Y / (lambda * N) and K = nu * Y.
EconState make_econ_state(const EconParams& params, double omega, double lambda,
                          double N, double w, double Y);

/// Short-run Phillips curve phi0 + phi1 * lambda.
double phillips(const EconParams& params, double lambda);

/// Logistic population growth rate q * (1 - N / P_N).
double population_growth_rate(const EconParams& params, double N);

/// Time derivatives of the Goodwin system:
///   omega' = omega (phi(lambda) - alpha_g)
///   lambda' = lambda ((1 - omega)/nu - alpha_g - n - delta)
///   N' = n N,  a' = alpha_g a,  w' = w phi(lambda)
///   Y' = Y ((1 - omega)/nu - delta)
///   K' = I - delta K,  I = Y (1 - omega)
/// When delivered_output is present (coupled runs), it replaces Y in the
/// output and accumulation equations before the derivatives are formed.
EconDerivative econ_derivatives(const EconState& state, const EconParams& params,
                                std::optional<double> delivered_output = {});

/// Markup price p = (1 + m) * w * L / Y.
/// Throws std::domain_error("economy collapsed") when Y <= 0.
double price(double w, double L, double Y, double m);

struct ProfitInvestment {
    double profit = 0.0;      ///< nominal net profit p Y - w L
    double investment = 0.0;  ///< real investment Y (1 - omega)
};
ProfitInvestment profit_and_investment(const EconState& state, const EconParams& params);

/// The two-sector transaction closure. Consumption is implicit (Say's law):
/// p C = p Y - p I, household saving S_h = w L - p C. The financial
/// balances S_h + profit - p I sum to zero by construction.
struct SfcBalances {
    double household_saving = 0.0;   ///< S_h
    double firm_profit = 0.0;        ///< current-account balance of firms
    double investment_outlay = 0.0;  ///< p I (capital-account outflow)
    double consumption_outlay = 0.0; ///< p C
    double wage_bill = 0.0;          ///< w L

    double financial_sum() const {
        return household_saving + firm_profit - investment_outlay;
    }
};
SfcBalances sfc_balances(const EconState& state, const EconParams& params);

}  // namespace thermoecon

#endif  // THERMOECON_ECONOMY_HPP
