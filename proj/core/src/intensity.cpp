#include "thermoecon/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermoecon/sheet.hpp"

namespace thermoecon {

void IntensityPolicy::validate() const {
    if (mode == IntensityMode::FractionOfOptimal && !(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("IntensityPolicy: fraction must be in (0, 1]");
}

DemandRoots solve_demand_intensity(double delta_mu, double R_P, double G_D) {
    // -R_P J^2 + delta_mu J - G_D = 0, or R_P J^2 - delta_mu J + G_D = 0.
    const double disc = delta_mu * delta_mu - 4.0 * R_P * G_D;
    const double scale = delta_mu * delta_mu + std::abs(4.0 * R_P * G_D);

    DemandRoots out;
    if (disc < -1e-12 * scale) {
        out.kind = DemandRoots::Kind::Infeasible;
        return out;
    }
    if (disc <= 1e-12 * scale) {
        out.kind = DemandRoots::Kind::Tangent;
        out.lo = out.hi = delta_mu / (2.0 * R_P);
        return out;
    }
    // Larger-magnitude root from the formula, the other from the product
    // of roots G_D / R_P; immune to cancellation when G_D << G_max.
    const double root = std::sqrt(disc);
    const double q = 0.5 * (delta_mu + std::copysign(root, delta_mu));
    const double r1 = q / R_P;
    const double r2 = G_D / q;
    out.kind = DemandRoots::Kind::TwoRoots;
    out.lo = std::min(r1, r2);
    out.hi = std::max(r1, r2);
    return out;
}

double optimal_intensity(double delta_mu, double R_P, double G_D) {
    const double j_max = max_production_intensity(delta_mu, R_P);
    const DemandRoots roots = solve_demand_intensity(delta_mu, R_P, G_D);
    switch (roots.kind) {
        case DemandRoots::Kind::Infeasible:
            return j_max;  // chase demand at the top of the parabola
        case DemandRoots::Kind::Tangent:
            return std::clamp(roots.lo, 0.0, j_max);
        case DemandRoots::Kind::TwoRoots: {
            const double lower = roots.lo >= 0.0 ? roots.lo
                                 : roots.hi >= 0.0 ? roots.hi
                                                   : j_max;
            return std::min(lower, j_max);
        }
    }
    return j_max;
}

double lag_intensity(double J_current, double J_demanded, double tau, double dt) {
    if (tau <= 0.0) return J_demanded;
    return J_demanded + (J_current - J_demanded) * std::exp(-dt / tau);
}

double satisfied_demand(double G, double G_D, double X_S) {
    if (G - G_D > 0.0 || X_S > 0.0) return G_D;
    return G;
}

double satisfied_demand(double G, double G_D, double X_S, double dt) {
    if (G - G_D > 0.0) return G_D;
    if (X_S > 0.0) return std::min(G_D, G + X_S / dt);
    return G;
}

}  // namespace thermoecon
