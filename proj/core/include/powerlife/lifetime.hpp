#pragma once

// Cycles-to-failure and Palmgren-Miner damage accumulation, plus the
// cross-model damage comparison.
//
//   N_f = A * dT^b1 * exp(b2 / (T_max + 273)) * (t_on / 1.5)^b3
//
// with t_on clamped into the model's validity bounds before evaluation.
// Zero-range cycles contribute no damage (N_f treated as infinite).

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "powerlife/rainflow.hpp"

namespace powerlife {

/// Fitting parameters of the cycles-to-failure model.
struct LifetimeParams {
    double A = 1.42e12;     ///< cycles
    double beta1 = -7.14;   ///< range exponent
    double beta2 = 5154.0;  ///< K, Arrhenius-like temperature constant
    double beta3 = -0.3;    ///< heating-duration exponent
    double t_on_min = 0.1;  ///< s, validity bounds of the t_on term
    double t_on_max = 60.0;

    [[nodiscard]] bool valid() const { return A > 0.0 && t_on_min < t_on_max; }
};

/// Cycles to failure of one thermal cycle. Returns +inf for dT <= 0.
[[nodiscard]] inline double cycles_to_failure(const ThermalCycle& cycle, const LifetimeParams& p) {
    if (!p.valid()) throw std::invalid_argument("cycles_to_failure: invalid parameters");
    if (cycle.dT <= 0.0) return std::numeric_limits<double>::infinity();
    double t_on = std::clamp(cycle.t_on, p.t_on_min, p.t_on_max);
    return p.A * std::pow(cycle.dT, p.beta1) * std::exp(p.beta2 / (cycle.T_max + 273.0)) *
           std::pow(t_on / 1.5, p.beta3);
}

/// Miner sum D = sum(count_j / N_f_j) over the table. Failure at D = 1.
[[nodiscard]] inline double accumulate_damage(const CycleTable& table, const LifetimeParams& p) {
    double D = 0.0;
    for (const auto& cycle : table.cycles) {
        double nf = cycles_to_failure(cycle, p);
        if (std::isfinite(nf)) D += cycle.count / nf;
    }
    return D;
}

/// Scales per-run damage to a driving year.
[[nodiscard]] inline double annualize(double damage_per_run, double profile_duration_s,
                                      double annual_driving_hours) {
    if (!(profile_duration_s > 0.0) || !(annual_driving_hours > 0.0))
        throw std::invalid_argument("annualize: inputs must be positive");
    return damage_per_run * (annual_driving_hours * 3600.0 / profile_duration_s);
}

/// Damage of one device in one (profile, loss model) scenario.
struct ScenarioDamage {
    std::string profile;  ///< e.g. "NYCC"
    std::string model;    ///< "t_o" or "t_sw"
    std::string device;   ///< "igbt" or "diode"
    double D_run = 0.0;
    double D_annual = 0.0;
    std::size_t n_cycles = 0;
    double max_dT = 0.0;  ///< K
};

/// Cross-model result for one device under one profile.
struct ModelComparison {
    std::string profile;
    std::string device;
    double D_run_t_o = 0.0;
    double D_run_t_sw = 0.0;
    double D_annual_t_o = 0.0;
    double D_annual_t_sw = 0.0;
    double ratio = 0.0;  ///< D(t_sw) / D(t_o)
    bool switching_model_required = false;  ///< ratio above the threshold
};

/// Pairs up the t_o and t_sw runs of every (profile, device) and computes
/// damage ratios. A (profile, device) present under only one model is an
/// error naming the missing scenario. ratio > threshold raises the flag.
[[nodiscard]] std::vector<ModelComparison> compare(const std::vector<ScenarioDamage>& reports,
                                                   double ratio_threshold);

}  // namespace powerlife
