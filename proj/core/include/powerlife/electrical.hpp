#pragma once

// Quasi-steady PMSM electrical model under i_d = 0 control. Maps a
// (speed, torque) mission sample to the inverter operating point: peak
// phase current, electrical angular frequency, modulation index, and the
// angle between load current and modulation voltage.
//
//   i_q = 2*tau / (3 * p_n * Psi_f)
//   u_d = -w_e * L_q * i_q             (di/dt terms dropped; mission
//   u_q =  R_s * i_q + w_e * Psi_f      sampling is far slower than the
//                                       electrical transients)
//   m   = 2*sqrt(u_d^2 + u_q^2) / U_dc
//   phi = atan2(-u_d, u_q) - atan2(-i_d, i_q), wrapped to (-pi, pi]

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "powerlife/mission.hpp"

namespace powerlife {

/// Machine and converter constants.
struct MachineParameters {
    double R_s = 0.0;    ///< stator resistance, Ohm
    double L_d = 0.0;    ///< d-axis inductance, H
    double L_q = 0.0;    ///< q-axis inductance, H
    double Psi_f = 0.0;  ///< PM flux linkage, Wb
    int p_n = 0;         ///< pole pairs
    double U_dc = 0.0;   ///< dc-bus voltage, V
    double f_sw = 0.0;   ///< switching frequency, Hz
    double tau_max = 0.0;  ///< torque rating used for input validation, N·m

    [[nodiscard]] bool valid() const {
        return R_s > 0.0 && L_d > 0.0 && L_q > 0.0 && Psi_f > 0.0 && p_n >= 1 &&
               U_dc > 0.0 && f_sw > 0.0 && tau_max > 0.0;
    }
};

/// Electrical state of one mission sample.
struct OperatingPoint {
    double I_m = 0.0;      ///< peak phase current, A (= |i_q| under i_d = 0)
    double omega_e = 0.0;  ///< electrical angular frequency, rad/s
    double m = 0.0;        ///< modulation index, clamped to [0, 1]
    double phi = 0.0;      ///< current-to-voltage angle, rad, in (-pi, pi]
    double u_d = 0.0, u_q = 0.0;  ///< V
    double i_d = 0.0, i_q = 0.0;  ///< A
    double m_raw = 0.0;           ///< pre-clamp modulation index
    bool overmodulated = false;   ///< m_raw exceeded 1
};

/// Wraps an angle to (-pi, pi].
[[nodiscard]] inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w = std::numbers::pi;
    return w;
}

/// Operating point for one mission sample. Overmodulation (m_raw > 1) is
/// recorded on the result, never silently discarded.
[[nodiscard]] inline OperatingPoint operating_point(const MissionSample& sample,
                                                    const MachineParameters& machine) {
    if (!machine.valid()) throw std::invalid_argument("operating_point: invalid machine parameters");
    if (std::abs(sample.torque) > machine.tau_max)
        throw std::invalid_argument("operating_point: |torque| exceeds machine rating");

    OperatingPoint op;
    op.i_d = 0.0;
    op.i_q = 2.0 * sample.torque / (3.0 * static_cast<double>(machine.p_n) * machine.Psi_f);
    op.I_m = std::abs(op.i_q);
    op.omega_e = static_cast<double>(machine.p_n) * 2.0 * std::numbers::pi * sample.speed / 60.0;
    op.u_d = -op.omega_e * machine.L_q * op.i_q;
    op.u_q = machine.R_s * op.i_q + op.omega_e * machine.Psi_f;
    op.m_raw = 2.0 * std::hypot(op.u_d, op.u_q) / machine.U_dc;
    op.overmodulated = op.m_raw > 1.0;
    op.m = op.overmodulated ? 1.0 : op.m_raw;
    op.phi = wrap_angle(std::atan2(-op.u_d, op.u_q) - std::atan2(-op.i_d, op.i_q));
    return op;
}

/// Instantaneous load current i(t) = I_m * sin(w_e * t). At standstill
/// (w_e = 0) the current is held at I_m, the dc condition.
[[nodiscard]] inline double instantaneous_current(const OperatingPoint& op, double t_within_period) {
    if (op.omega_e == 0.0) return op.I_m;
    return op.I_m * std::sin(op.omega_e * t_within_period);
}

}  // namespace powerlife
