#pragma once

// IGBT/diode conduction and switching losses at two time resolutions.
//
// Output-period average (one fundamental period of the load current):
//   P_cS  = (1/(2pi) + m*cos(phi)/8) * U_CE * I_m
//         + (1/8 + m*cos(phi)/(3pi)) * r_CE * I_m^2
//   P_cD  = same with the m*cos(phi) terms negated and diode parameters
//   P_swS = (1/pi) * f_sw * (E_on+E_off)_ref * (I_m/I*) * (U_dc/U*)
//   P_recD= (1/pi) * f_sw * E_rec_ref       * (I_m/I*) * (U_dc/U*)
//
// Switching-period average (one PWM carrier period), on the positive
// half-wave of the modeled IGBT/freewheeling-diode pair:
//   P_cS  = (U_CE*i + r_CE*i^2) * (1 + m*sin(theta+phi))/2
//   P_cD  = (U_F *i + r_F *i^2) * (1 - m*sin(theta+phi))/2
//   P_swS = f_sw * (E_on+E_off)_ref * (i/I*) * (U_dc/U*)
//   P_recD= f_sw * E_rec_ref        * (i/I*) * (U_dc/U*)
// For i <= 0 all four terms are zero (the complementary pair conducts).
//
// Switching energy is the datasheet reference value scaled linearly once,
// E(i) = E_ref * (i/I*) * (U_dc/U*); the time average of the
// switching-period forms over one full fundamental period then reproduces
// the output-period forms exactly.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "powerlife/device.hpp"
#include "powerlife/electrical.hpp"

namespace powerlife {

enum class LossResolution {
    OutputPeriod,     ///< averaged over one fundamental period (t_o)
    SwitchingPeriod,  ///< averaged over one PWM period (t_sw)
};

/// Loss terms of the IGBT/diode pair at one instant.
struct LossSample {
    double t = 0.0;       ///< seconds
    double P_cS = 0.0;    ///< IGBT conduction loss, W
    double P_swS = 0.0;   ///< IGBT switching loss, W
    double P_cD = 0.0;    ///< diode conduction loss, W
    double P_recD = 0.0;  ///< diode recovery loss, W
    LossResolution resolution = LossResolution::OutputPeriod;

    [[nodiscard]] double igbt_total() const { return P_cS + P_swS; }
    [[nodiscard]] double diode_total() const { return P_cD + P_recD; }
};

/// Output-period-average losses of one operating point.
[[nodiscard]] inline LossSample loss_output_period(const OperatingPoint& op,
                                                   const DeviceCharacteristics& dev,
                                                   const MachineParameters& machine) {
    if (op.m < 0.0 || op.m > 1.0)
        throw std::invalid_argument("loss_output_period: m must be within [0, 1]");
    constexpr double pi = std::numbers::pi;
    const double mc = op.m * std::cos(op.phi);
    const double sw_scale =
        machine.f_sw * (op.I_m / dev.I_star) * (machine.U_dc / dev.U_star) / pi;

    LossSample loss;
    loss.resolution = LossResolution::OutputPeriod;
    loss.P_cS = (1.0 / (2.0 * pi) + mc / 8.0) * dev.U_CE * op.I_m +
                (1.0 / 8.0 + mc / (3.0 * pi)) * dev.r_CE * op.I_m * op.I_m;
    loss.P_cD = (1.0 / (2.0 * pi) - mc / 8.0) * dev.U_F * op.I_m +
                (1.0 / 8.0 - mc / (3.0 * pi)) * dev.r_F * op.I_m * op.I_m;
    loss.P_swS = sw_scale * dev.E_sw_ref();
    loss.P_recD = sw_scale * dev.E_rec_ref;
    return loss;
}

/// Switching-period-average losses at instantaneous current i_t and
/// electrical angle theta. Zero for i_t <= 0.
[[nodiscard]] inline LossSample loss_switching_period(const OperatingPoint& op,
                                                      const DeviceCharacteristics& dev,
                                                      const MachineParameters& machine,
                                                      double i_t, double theta) {
    if (op.m < 0.0 || op.m > 1.0)
        throw std::invalid_argument("loss_switching_period: m must be within [0, 1]");

    LossSample loss;
    loss.resolution = LossResolution::SwitchingPeriod;
    if (i_t <= 0.0) return loss;

    const double s = op.m * std::sin(theta + op.phi);
    const double duty_igbt = 0.5 * (1.0 + s);
    const double duty_diode = 0.5 * (1.0 - s);
    const double sw_scale = machine.f_sw * (i_t / dev.I_star) * (machine.U_dc / dev.U_star);

    loss.P_cS = (dev.U_CE * i_t + dev.r_CE * i_t * i_t) * duty_igbt;
    loss.P_cD = (dev.U_F * i_t + dev.r_F * i_t * i_t) * duty_diode;
    loss.P_swS = sw_scale * dev.E_sw_ref();
    loss.P_recD = sw_scale * dev.E_rec_ref;
    return loss;
}

}  // namespace powerlife
