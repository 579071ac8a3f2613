#pragma once

// Cauer RC-ladder thermal model with a fixed heatsink temperature. Heat is
// injected at the junction node, flows through the junction-to-case rungs
// and a purely resistive case-to-heatsink resistance into T_H. Integration
// is backward Euler on the ladder state space; the system matrix is
// factorized once per (ladder, dt).

#include <cstddef>
#include <span>
#include <vector>

#include "powerlife/losses.hpp"

namespace powerlife {

/// One ladder rung: series thermal resistance, node capacitance.
struct CauerRung {
    double R = 0.0;  ///< K/W
    double C = 0.0;  ///< J/K

    [[nodiscard]] double tau() const { return R * C; }
};

/// Junction-to-heatsink ladder, junction side first.
struct CauerLadder {
    std::vector<CauerRung> rungs;
    double R_CH = 0.0;  ///< case-to-heatsink resistance, K/W (no capacitance)

    [[nodiscard]] double total_R() const {
        double r = R_CH;
        for (const auto& rung : rungs) r += rung.R;
        return r;
    }

    [[nodiscard]] bool valid() const {
        if (rungs.empty() || R_CH < 0.0) return false;
        for (const auto& rung : rungs)
            if (!(rung.R > 0.0) || !(rung.C > 0.0)) return false;
        return true;
    }
};

/// IGBT and diode ladders sharing one constant-temperature heatsink node.
/// The standard module configuration carries exactly 4 rungs per device.
struct ThermalNetwork {
    CauerLadder igbt;
    CauerLadder diode;
    double T_H = 0.0;  ///< heatsink temperature, deg C
};

/// Node temperatures of both ladders at one instant.
struct ThermalState {
    std::vector<double> igbt_nodes;   ///< deg C, junction node first
    std::vector<double> diode_nodes;  ///< deg C
    double t = 0.0;                   ///< seconds

    [[nodiscard]] double T_j_igbt() const { return igbt_nodes.front(); }
    [[nodiscard]] double T_j_diode() const { return diode_nodes.front(); }
};

/// Backward-Euler integrator for one ladder with fixed step size.
/// The tridiagonal (C/dt + G) factorization is computed once.
class LadderSolver {
public:
    LadderSolver(const CauerLadder& ladder, double T_H, double dt);

    /// Sets every node to the given temperature (default: heatsink).
    void reset();
    void reset(std::span<const double> node_temperatures);

    /// Advances one step with power P injected at the junction.
    /// Returns the junction temperature. Throws on non-finite P.
    double step(double P);

    [[nodiscard]] std::span<const double> nodes() const { return T_; }
    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] double T_H() const { return T_H_; }

private:
    std::size_t n_;
    double T_H_;
    double dt_;
    std::vector<double> cap_over_dt_;  // C_i / dt
    std::vector<double> lower_;        // -g_{i-1}
    std::vector<double> cprime_;       // Thomas forward coefficients
    std::vector<double> inv_den_;      // 1 / (d_i - lower_i * cprime_{i-1})
    std::vector<double> x_;            // node rise above T_H
    std::vector<double> T_;
    std::vector<double> rhs_;
};

/// Uniform-grid junction-temperature series for both devices.
struct TemperatureSeries {
    double dt = 0.0;  ///< seconds
    double t0 = 0.0;  ///< time of the first entry
    std::vector<double> igbt_C;
    std::vector<double> diode_C;
};

/// One backward-Euler step of the full network. state's node vectors must
/// match the ladder orders; empty vectors initialize at T_H.
[[nodiscard]] ThermalState step(const ThermalState& state, double P_igbt, double P_diode,
                                const ThermalNetwork& net, double dt);

/// Drives both ladders with a loss series on a uniform grid. Entry k of the
/// result is the state after applying losses[k] for dt, starting from all
/// nodes at T_H. IGBT power is P_cS + P_swS, diode power P_cD + P_recD.
[[nodiscard]] TemperatureSeries simulate(std::span<const LossSample> losses,
                                         const ThermalNetwork& net, double dt);

}  // namespace powerlife
