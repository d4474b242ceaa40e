#ifndef THERMOECON_INTENSITY_HPP
#define THERMOECON_INTENSITY_HPP

namespace thermoecon {

enum class IntensityMode {
    MaxIntensity,       ///< run at the top of the production parabola
    Optimal,            ///< lower demand-matching root, capped at J_P_max
    FractionOfOptimal,  ///< a fixed fraction of the Optimal choice
};

enum class RecyclingMode {
    AtMax,         ///< run the recycler at its maximal admissible intensity
    Proportional,  ///< J_R = n_R * J_global, capped at the admissible maximum
};

/// How a sheet chooses its operating point. n_R == 0 disables the
/// recycler in either mode.
struct IntensityPolicy {
    IntensityMode mode = IntensityMode::Optimal;
    double fraction = 1.0;  ///< only used by FractionOfOptimal, in (0, 1]
    RecyclingMode recycling = RecyclingMode::AtMax;

    void validate() const;
};

/// Real roots of the demand-matching quadratic
///   -R_P * J^2 + delta_mu * J - G_D = 0.
struct DemandRoots {
    enum class Kind { TwoRoots, Tangent, Infeasible };
    Kind kind = Kind::Infeasible;
    double lo = 0.0;  ///< ascending; lo == hi for Tangent
    double hi = 0.0;
};

/// Solve the demand-matching quadratic. Computed in the cancellation-free
/// form: larger-magnitude root from the formula, the other via the product
/// of roots G_D / R_P. Tangent when the discriminant vanishes to 1e-12
/// relative; Infeasible when demand exceeds the attainable maximum.
DemandRoots solve_demand_intensity(double delta_mu, double R_P, double G_D);

/// Demand-following operating point: the lower nonnegative root, capped at
/// J_P_max = delta_mu / (2 R_P). Falls back to J_P_max when demand cannot
/// be met at any intensity.
double optimal_intensity(double delta_mu, double R_P, double G_D);

/// One exact low-pass step of tau * dJ/dt = J_demanded - J.
/// tau == 0 responds instantaneously.
double lag_intensity(double J_current, double J_demanded, double tau, double dt);

/// Rationed demand: demand is served in full while production exceeds it
/// or the buffer holds inventory; otherwise delivery falls back to current
/// production.
double satisfied_demand(double G, double G_D, double X_S);

/// As satisfied_demand, but the inventory draw is capped at X_S / dt so a
/// finite step cannot overdraw the buffer.
double satisfied_demand(double G, double G_D, double X_S, double dt);

}  // namespace thermoecon

#endif  // THERMOECON_INTENSITY_HPP
