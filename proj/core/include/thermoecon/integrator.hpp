#ifndef THERMOECON_INTEGRATOR_HPP
#define THERMOECON_INTEGRATOR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermoecon/coupling.hpp"
#include "thermoecon/economy.hpp"
#include "thermoecon/scenario.hpp"
#include "thermoecon/sheet.hpp"

namespace thermoecon {

/// Full state of one simulation at an instant.
struct SimState {
    double t = 0.0;
    std::vector<SheetState> sheets;
    std::optional<EconState> econ;
};

/// A step would have driven a stock below -1e-6 * X_T: dt is too large.
class StepRejected : public std::runtime_error {
  public:
    StepRejected(double t, const std::string& what) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

  private:
    double t_;
};

/// One recorded instant of the economy.
struct EconSample {
    EconState state;
    std::optional<double> p;  ///< absent once output has collapsed to zero
    double profit = 0.0;
    double investment = 0.0;
    double demand = 0.0;        ///< physical demand sent to the sheets
    double delivered = 0.0;     ///< physical demand served
    double capital_output_drift = 0.0;  ///< K / (nu Y) - 1, recorded not enforced
};

struct Sample {
    double t = 0.0;
    std::vector<SheetState> sheets;
    std::vector<FlowReport> flows;  ///< parallel to sheets
    std::optional<EconSample> econ;
};

enum class RunStatus { Completed, Collapsed, StepRejected };

/// Sampled time series of a whole run, at a constant stride.
struct RunRecord {
    std::vector<Sample> samples;
    RunStatus status = RunStatus::Completed;
    double end_time = 0.0;
    std::string message;
    std::vector<std::string> warnings;
    double clamped_matter = 0.0;  ///< total stock deficit absorbed by clamping

    std::size_t sheet_count() const {
        return samples.empty() ? 0 : samples.front().sheets.size();
    }
    bool has_econ() const { return !samples.empty() && samples.front().econ.has_value(); }
};

/// Stock balance of one sheet, assembled from a resolved tick:
///   X_H' = F_NR - F_HP + F_HR - F_RIn
///   X_L' = -F_NR + F_LP - F_LR + G_D_satisfied
///   X_S' = G - G_D_satisfied
/// The three sum to zero whenever G = F_HP - F_LP and F_RIn = F_HR - F_LR.
struct StockDerivative {
    double X_H = 0.0, X_L = 0.0, X_S = 0.0;
};
StockDerivative stock_derivatives(const FlowReport& flows);

/// The units bridge actually used by a coupled run: the configured kappa,
/// or the t = 0 calibration (initial demand = demand_fraction of the
/// initial attainable maximum) when the configured value is 0.
double resolved_kappa(const ScenarioSpec& spec);

/// State at t = 0 for a scenario (validates the spec).
SimState initial_state(const ScenarioSpec& spec);

/// Advance one RK4 step of the joint sheet + economy system. Intensities
/// are re-resolved from the potentials inside every derivative
/// evaluation. In coupled mode, un-served demand first replaces the
/// output state with the delivered value. Small negative stocks after
/// the step are clamped to zero with the deficit moved to the paired
/// stock (conservation is preserved exactly); larger ones throw
/// StepRejected. Returns the matter moved by clamping.
double step(SimState& state, const ScenarioSpec& spec, double dt);

/// Integrate from t = 0 to the horizon, recording every output_stride
/// steps. Terminates early with status Collapsed when output or all
/// production stays at zero for a full grace window; a rejected step
/// truncates the record with status StepRejected and the offending time
/// in the message.
RunRecord run(const ScenarioSpec& spec);

}  // namespace thermoecon

#endif  // THERMOECON_INTEGRATOR_HPP
