#ifndef THERMOECON_ANALYSIS_HPP
#define THERMOECON_ANALYSIS_HPP

#include <cstddef>
#include <limits>

#include "thermoecon/integrator.hpp"

namespace thermoecon {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// First sample time at which delta_mu drops to or below threshold;
/// kNever if it stays above over the whole record.
double pinch_time(const RunRecord& record, std::size_t sheet, double threshold);

/// Trapezoidal integral of total production G over the record.
double cumulative_production(const RunRecord& record);

/// Trapezoidal integral of total resource extraction F_HP.
double cumulative_extraction(const RunRecord& record);

/// Largest total production over the record.
double production_peak(const RunRecord& record);

/// First time after the production peak at which total G falls below
/// fraction * peak; kNever if it never does.
double production_drop_time(const RunRecord& record, double fraction);

/// Time of the first local minimum of delta_mu (kNever for monotone records).
double first_pinch_turning_point(const RunRecord& record, std::size_t sheet);

/// Sign changes of the sampled slope of delta_mu after time t0, counting
/// only moves larger than min_step.
int delta_mu_slope_sign_changes(const RunRecord& record, std::size_t sheet,
                                double t0, double min_step);

/// Largest relative conservation error |X_H + X_L + X_S - X_T| / X_T
/// over all samples and sheets of the record.
double max_conservation_error(const RunRecord& record, const ScenarioSpec& spec);

}  // namespace thermoecon

#endif  // THERMOECON_ANALYSIS_HPP
