#ifndef THERMOECON_COUPLING_HPP
#define THERMOECON_COUPLING_HPP

#include <optional>
#include <vector>

#include "thermoecon/intensity.hpp"
#include "thermoecon/sheet.hpp"

namespace thermoecon {

/// One physical sector: its constants plus the rule for picking its
/// operating point.
struct SheetSpec {
    SheetParams params;
    IntensityPolicy policy;
};

/// Bridge between the economy and the physical sheets.
struct CouplingParams {
    /// Resource units demanded per unit of output. 0 means "calibrate at
    /// t = 0 so that initial demand is demand_fraction of the initial
    /// attainable maximum".
    double kappa = 0.0;
    double demand_fraction = 0.12;

    /// Capital-dependent friction R_P = R_P0 * K0 / K + friction_floor,
    /// with R_P0 taken from each sheet's configured R_P.
    bool friction_law = true;
    double friction_floor = 4e-5;

    void validate() const;
};

/// Capital state the friction law reads from (coupled runs only).
struct FrictionContext {
    double K = 0.0;
    double K0 = 0.0;
};

/// R_P0 * K0 / K + floor. Strictly decreasing in K, bounded below by floor.
/// Throws std::domain_error("capital exhausted") when K <= 0.
double friction_from_capital(double K, double K0, double R_P0, double floor = 4e-5);

/// Physical demand addressed to the sheets: kappa * Y.
double demand_from_economy(double Y, double kappa);

/// Output corresponding to the goods actually served: G_satisfied / kappa.
double deliver_to_economy(double G_satisfied, double kappa);

/// Per-sheet demanded intensities n_P(i) * J_global.
std::vector<double> fan_out_intensity(double J_global, const std::vector<SheetSpec>& sheets);

/// Result of resolving one kernel tick at a fixed instant.
struct TickResult {
    std::vector<FlowReport> sheets;
    double J_global = 0.0;   ///< demand-matching intensity before fan-out
    double demand = 0.0;     ///< total demand addressed to the sheets
    double delivered = 0.0;  ///< total demand actually served
};

/// Resolve all per-sheet flows for total demand G_D_total; the heart of
/// every derivative evaluation. J_global solves the aggregate
/// demand-matching quadratic (sum of per-sheet parabolas under the n_P
/// fan-out), each sheet then applies its own policy and recycling rule,
/// and demand is allocated across sheets in proportion to production
/// (falling back to inventories, then to n_P shares). dt bounds the
/// per-sheet inventory draw. friction, when present, overrides each
/// sheet's R_P through the capital law.
TickResult resolve_tick(const std::vector<SheetState>& states,
                        const std::vector<SheetSpec>& sheets, double G_D_total,
                        double dt, const std::optional<FrictionContext>& friction,
                        double friction_floor = 4e-5);

}  // namespace thermoecon

#endif  // THERMOECON_COUPLING_HPP
