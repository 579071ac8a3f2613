#pragma once

// Power-device parameters and datasheet-curve fitting. The on-state V-I
// curves of IGBT and diode are reduced to affine (threshold + slope) models
// by least squares; switching/recovery energies are read at the datasheet
// test current I* and scaled linearly from the (I*, U*) reference point.

#include <string>
#include <vector>

namespace powerlife {

/// One point of a datasheet curve: V-I (voltage) or switching energy.
struct CurvePoint {
    double current = 0.0;  ///< A
    double value = 0.0;    ///< V for V-I curves, J for energy curves
};

using Curve = std::vector<CurvePoint>;

/// Fitted conduction and switching-energy parameters of one IGBT + one
/// freewheeling diode, with the datasheet reference conditions.
struct DeviceCharacteristics {
    double U_CE = 0.0;       ///< IGBT on-state threshold voltage, V
    double r_CE = 0.0;       ///< IGBT on-state slope resistance, Ohm
    double U_F = 0.0;        ///< diode threshold voltage, V
    double r_F = 0.0;        ///< diode slope resistance, Ohm
    double E_on_ref = 0.0;   ///< IGBT turn-on energy at (I*, U*), J
    double E_off_ref = 0.0;  ///< IGBT turn-off energy at (I*, U*), J
    double E_rec_ref = 0.0;  ///< diode recovery energy at (I*, U*), J
    double I_star = 0.0;     ///< datasheet test current, A
    double U_star = 0.0;     ///< datasheet test voltage, V
    double I_rated = 0.0;    ///< rated device current, A

    /// Total IGBT switching energy at reference conditions. Only this sum
    /// enters the loss formulas; the on/off split is never used alone.
    [[nodiscard]] double E_sw_ref() const { return E_on_ref + E_off_ref; }

    [[nodiscard]] bool valid() const {
        return U_CE > 0.0 && r_CE > 0.0 && U_F > 0.0 && r_F > 0.0 && E_on_ref > 0.0 &&
               E_off_ref > 0.0 && E_rec_ref > 0.0 && I_star > 0.0 && U_star > 0.0 && I_rated > 0.0;
    }
};

/// Affine fit v = U + r*i of a V-I curve by least squares.
struct AffineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

/// Least-squares line through a curve. Throws std::invalid_argument on
/// fewer than 2 points, non-increasing currents, or a singular system.
[[nodiscard]] AffineFit fit_affine(const Curve& curve);

/// Value at the given current by linear interpolation; extrapolates from
/// the end segments outside the tabulated range.
[[nodiscard]] double interpolate_curve(const Curve& curve, double current);

/// Fits both V-I curves and reads the switching/recovery energies at I_star.
/// e_sw is the combined E_on + E_off curve; the fitted total is split evenly
/// between E_on_ref and E_off_ref (the loss formulas only use the sum).
[[nodiscard]] DeviceCharacteristics fit_device(const Curve& vi_igbt, const Curve& vi_diode,
                                               const Curve& e_sw, const Curve& e_rec,
                                               double I_star, double U_star, double I_rated);

/// Reads a two-column curve CSV (header `current_a,<value column>`).
[[nodiscard]] Curve load_curve_file(const std::string& path);

}  // namespace powerlife
