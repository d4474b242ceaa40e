#include "thermoecon/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace thermoecon {

namespace {

double total_G(const Sample& row) {
    double g = 0.0;
    for (const FlowReport& f : row.flows) g += f.G;
    return g;
}

}  // namespace

double pinch_time(const RunRecord& record, std::size_t sheet, double threshold) {
    for (const Sample& row : record.samples)
        if (sheet < row.flows.size() && row.flows[sheet].delta_mu <= threshold)
            return row.t;
    return kNever;
}

double cumulative_production(const RunRecord& record) {
    double sum = 0.0;
    for (std::size_t i = 1; i < record.samples.size(); ++i) {
        const double dt = record.samples[i].t - record.samples[i - 1].t;
        sum += 0.5 * dt * (total_G(record.samples[i]) + total_G(record.samples[i - 1]));
    }
    return sum;
}

double cumulative_extraction(const RunRecord& record) {
    auto total_FHP = [](const Sample& row) {
        double f = 0.0;
        for (const FlowReport& fl : row.flows) f += fl.F_HP;
        return f;
    };
    double sum = 0.0;
    for (std::size_t i = 1; i < record.samples.size(); ++i) {
        const double dt = record.samples[i].t - record.samples[i - 1].t;
        sum += 0.5 * dt * (total_FHP(record.samples[i]) + total_FHP(record.samples[i - 1]));
    }
    return sum;
}

double production_peak(const RunRecord& record) {
    double peak = 0.0;
    for (const Sample& row : record.samples) peak = std::max(peak, total_G(row));
    return peak;
}

double production_drop_time(const RunRecord& record, double fraction) {
    const double peak = production_peak(record);
    if (peak <= 0.0) return kNever;
    bool past_peak = false;
    for (const Sample& row : record.samples) {
        const double g = total_G(row);
        if (!past_peak && g >= peak) past_peak = true;
        if (past_peak && g < fraction * peak) return row.t;
    }
    return kNever;
}

double first_pinch_turning_point(const RunRecord& record, std::size_t sheet) {
    for (std::size_t i = 1; i + 1 < record.samples.size(); ++i) {
        const double prev = record.samples[i - 1].flows[sheet].delta_mu;
        const double cur = record.samples[i].flows[sheet].delta_mu;
        const double next = record.samples[i + 1].flows[sheet].delta_mu;
        if (cur < prev && cur <= next) return record.samples[i].t;
    }
    return kNever;
}

int delta_mu_slope_sign_changes(const RunRecord& record, std::size_t sheet, double t0,
                                double min_step) {
    int changes = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < record.samples.size(); ++i) {
        if (record.samples[i].t < t0) continue;
        const double d = record.samples[i].flows[sheet].delta_mu -
                         record.samples[i - 1].flows[sheet].delta_mu;
        if (std::abs(d) <= min_step) continue;
        const int sign = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

double max_conservation_error(const RunRecord& record, const ScenarioSpec& spec) {
    double worst = 0.0;
    for (const Sample& row : record.samples)
        for (std::size_t i = 0; i < row.sheets.size(); ++i) {
            const double X_T = spec.sheets[i].params.X_T;
            const double sum = row.sheets[i].X_H + row.sheets[i].X_L + row.sheets[i].X_S;
            worst = std::max(worst, std::abs(sum - X_T) / X_T);
        }
    return worst;
}

}  // namespace thermoecon
