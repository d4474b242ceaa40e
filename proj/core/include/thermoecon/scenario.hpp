#ifndef THERMOECON_SCENARIO_HPP
#define THERMOECON_SCENARIO_HPP

#include <string>
#include <vector>

#include "thermoecon/coupling.hpp"
#include "thermoecon/economy.hpp"

namespace thermoecon {

enum class RunMode { SheetOnly, GoodwinOnly, Coupled };

/// Initial stocks of one sheet. Negative X_H means "the whole stock":
/// X_H = X_T, X_L = X_S = 0.
struct SheetInit {
    double X_H = -1.0;
    double X_L = 0.0;
    double X_S = 0.0;
    double J_P = 0.0;
};

/// Initial values of the macro block.
struct EconInit {
    double omega = 0.58;
    double lambda = 0.69;
    double N = 4.55e9;
    double w = 11.98;
    double Y = 64.45e9;
};

/// Declarative description of one run.
struct ScenarioSpec {
    std::string name = "custom";
    RunMode mode = RunMode::SheetOnly;

    std::vector<SheetSpec> sheets;
    std::vector<SheetInit> sheet_init;  ///< parallel to sheets
    double demand = 30.0;               ///< constant demand (SheetOnly runs)

    EconParams econ;
    EconInit econ_init;
    CouplingParams coupling;

    double horizon = 100.0;
    double dt = 1e-3;
    int output_stride = 100;     ///< steps between recorded samples
    double grace_window = 1.0;   ///< collapse declared after this much dead time

    /// Throws std::invalid_argument with the offending field path.
    void validate() const;
};

/// Names of the built-in scenario presets.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);

/// Build a preset by name. Throws std::invalid_argument for unknown names.
ScenarioSpec preset(const std::string& name);

/// Load a scenario: a preset name, or a path to a scenario file.
ScenarioSpec load_scenario(const std::string& name_or_path);

/// Parse scenario text (JSON with // comments allowed). Strict: unknown
/// keys are rejected with their full path.
ScenarioSpec scenario_from_json(const std::string& text);

/// Serialize a scenario; scenario_from_json(scenario_to_json(s)) == s.
std::string scenario_to_json(const ScenarioSpec& spec);

}  // namespace thermoecon

#endif  // THERMOECON_SCENARIO_HPP
