#ifndef THERMOECON_SHEET_HPP
#define THERMOECON_SHEET_HPP

#include <optional>

namespace thermoecon {

/// Division guard: quotients with a denominator below this are reported
/// as "not defined" (std::nullopt) instead of producing inf/NaN.
inline constexpr double kEpsDiv = 1e-9;

/// Relative tolerance on stock-domain checks (fraction of X_T).
inline constexpr double kDomainTol = 1e-9;

/// Per-resource constants of one conversion sheet.
///
/// A sheet models a single resource as a conversion engine: a well of
/// primary resource X_H drives production against a waste sink X_L,
/// with forced and natural recycling closing the loop.
struct SheetParams {
    double X_T = 1000.0;  ///< total resource quantity (well + sink + buffer)
    double alpha = 1.0;   ///< potential steepness, in (0, 1]
    double r = 0.025;     ///< natural regeneration rate [1/time]
    double s = 0.2;       ///< Allee threshold fraction of X_T, in [0, 1]
    double R_P = 1e-3;    ///< production friction (impedance)
    double R_R = 1e-3;    ///< recycling friction (impedance)
    double n_P = 1.0;     ///< production share of the global intensity
    double n_R = 1.0;     ///< recycling share of the global intensity (0 disables)
    double tau = 0.0;     ///< intensity response time; 0 = instantaneous

    /// Rescale potentials by tanh(alpha) so a full well reads exactly 1.
    bool normalized_potentials = true;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Instantaneous stocks of one sheet. X_H + X_L + X_S == X_T always.
struct SheetState {
    double X_H = 0.0;  ///< primary (well) stock
    double X_L = 0.0;  ///< waste (sink) stock
    double X_S = 0.0;  ///< buffer stock of finished-goods inventories
    double J_P = 0.0;  ///< lagged production intensity (used when tau > 0)
};

struct ProductionFlows {
    double F_HP = 0.0;  ///< resource inflow into the engine
    double F_LP = 0.0;  ///< waste outflow
    double G = 0.0;     ///< useful work, F_HP - F_LP
};

struct RecyclingFlows {
    double F_HR = 0.0;   ///< recycled resource returned to the well
    double F_LR = 0.0;   ///< waste drawn from the sink
    double F_RIn = 0.0;  ///< primary resource consumed to drive the recycler
};

/// Efficiency and entropy diagnostics of the production engine.
/// Quotients that have no meaning in the current state (empty sink,
/// zero throughput) are absent rather than NaN.
struct SheetDiagnostics {
    std::optional<double> eta;       ///< energy efficiency G / F_HP
    std::optional<double> epsilon;   ///< exergy efficiency G / E_HP_dot
    std::optional<double> S_dot;     ///< entropy production rate
    std::optional<double> S_LP_dot;  ///< outgoing entropy flux
    double S_HP_dot = 0.0;           ///< incoming entropy flux (= J_P)
    double E_HP_dot = 0.0;           ///< incoming exergy flux (= delta_mu * J_P)
};

/// Everything a single kernel tick resolves for one sheet: potentials,
/// intensities, all matter fluxes and the engine diagnostics.
struct FlowReport {
    double mu_H = 0.0;      ///< well potential
    double mu_L = 0.0;      ///< sink potential
    double delta_mu = 0.0;  ///< driving force mu_H - mu_L
    double R_P_eff = 0.0;   ///< friction actually applied (capital law may override)

    double J_P = 0.0;           ///< production intensity in effect
    double J_P_demanded = 0.0;  ///< intensity requested by the policy (pre-lag)
    double J_P_max = 0.0;       ///< intensity of maximal production
    double J_R = 0.0;           ///< recycling intensity in effect
    double J_R_max = 0.0;       ///< maximal admissible recycling intensity

    double F_HP = 0.0, F_LP = 0.0, G = 0.0;
    double F_HR = 0.0, F_LR = 0.0, F_RIn = 0.0;
    double F_NR = 0.0;  ///< natural recycling (negative below the Allee threshold)

    double G_D = 0.0;            ///< demand addressed to this sheet
    double G_D_satisfied = 0.0;  ///< demand actually served (rationing applied)

    SheetDiagnostics diag;
};

/// Raw potential of a stock level: tanh(alpha * stock / X_T).
/// Monotone increasing, saturating at tanh(alpha).
/// Throws std::domain_error if stock is outside [0, X_T] beyond
/// kDomainTol * X_T; values inside the tolerance band are clamped.
double potential(double stock, const SheetParams& params);

/// Potential as used by the engine: the raw form, divided by tanh(alpha)
/// when params.normalized_potentials is set (full well reads 1).
double operating_potential(double stock, const SheetParams& params);

/// Production engine fluxes at intensity J_P:
///   F_HP = mu_H * J_P
///   F_LP = mu_L * J_P + R_P * J_P^2
///   G    = F_HP - F_LP
/// G is a downward parabola in J_P; negative G is a valid return.
ProductionFlows production_flows(double mu_H, double mu_L, double R_P, double J_P);
ProductionFlows production_flows(const SheetState& state, const SheetParams& params, double J_P);

/// Intensity that maximises production, delta_mu / (2 R_P), clamped at 0.
double max_production_intensity(double delta_mu, double R_P);

/// Maximal production G(J_P_max) = delta_mu^2 / (4 R_P) (0 when delta_mu <= 0).
double max_production(double delta_mu, double R_P);

/// Recycling engine fluxes at intensity J_R:
///   F_HR  = mu_H * J_R
///   F_LR  = mu_L * J_R - R_R * J_R^2
///   F_RIn = F_HR - F_LR
/// Throws std::domain_error when F_LR < 0, i.e. J_R beyond the physical
/// range; callers clamp to recycling_max_intensity first.
RecyclingFlows forced_recycling_flows(double mu_H, double mu_L, double R_R, double J_R);
RecyclingFlows forced_recycling_flows(const SheetState& state, const SheetParams& params, double J_R);

/// Intensity that maximises the waste draw F_LR: mu_L / (2 R_R).
double recycling_max_intensity(double mu_L, double R_R);

/// Natural regeneration with an Allee threshold:
///   F_NR = r * X_H * (1 - T_H) * (T_H / s - 1),  T_H = X_H / X_T.
/// Negative below the threshold fraction s. The degenerate s = 0 falls
/// back to the plain logistic form r * X_H * (1 - T_H).
double natural_recycling(double X_H, const SheetParams& params);
double natural_recycling(const SheetState& state, const SheetParams& params);

/// Efficiency and entropy block for the production engine.
SheetDiagnostics sheet_diagnostics(double mu_H, double mu_L, double R_P, double J_P);
SheetDiagnostics sheet_diagnostics(const SheetState& state, const SheetParams& params, double J_P);

}  // namespace thermoecon

#endif  // THERMOECON_SHEET_HPP
