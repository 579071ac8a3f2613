#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "powerlife/device.hpp"
#include "powerlife/losses.hpp"

using namespace powerlife;

namespace {

const std::string kDataDir = POWERLIFE_DATA_DIR;
constexpr double kPi = std::numbers::pi;

MachineParameters fixture_machine() {
    MachineParameters m;
    m.R_s = 0.34;
    m.L_d = 0.005;
    m.L_q = 0.005;
    m.Psi_f = 0.022;
    m.p_n = 4;
    m.U_dc = 200.0;
    m.f_sw = 10e3;
    m.tau_max = 3.5;
    return m;
}

DeviceCharacteristics fixture_device() {
    return fit_device(load_curve_file(kDataDir + "/device/vi_igbt_125c.csv"),
                      load_curve_file(kDataDir + "/device/vi_diode_125c.csv"),
                      load_curve_file(kDataDir + "/device/esw_igbt_600v.csv"),
                      load_curve_file(kDataDir + "/device/erec_diode_600v.csv"), 25.0, 600.0, 25.0);
}

DeviceCharacteristics unit_device(double U, double r) {
    DeviceCharacteristics d;
    d.U_CE = d.U_F = U;
    d.r_CE = d.r_F = r;
    d.E_on_ref = d.E_off_ref = 1e-3;
    d.E_rec_ref = 1e-3;
    d.I_star = 25.0;
    d.U_star = 600.0;
    d.I_rated = 25.0;
    return d;
}

OperatingPoint synthetic_op(double I_m, double m, double phi, double f_e) {
    OperatingPoint op;
    op.I_m = I_m;
    op.i_q = I_m;
    op.m = op.m_raw = m;
    op.phi = phi;
    op.omega_e = 2.0 * kPi * f_e;
    return op;
}

/// Time-average of the switching-period formulas over one output period.
LossSample average_switching_losses(const OperatingPoint& op, const DeviceCharacteristics& dev,
                                    const MachineParameters& machine) {
    double t_sw = 1.0 / machine.f_sw;
    auto n = static_cast<std::size_t>(std::llround(2.0 * kPi / op.omega_e / t_sw));
    LossSample avg;
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double i_t = op.I_m * std::sin(theta);
        LossSample s = loss_switching_period(op, dev, machine, i_t, theta);
        avg.P_cS += s.P_cS;
        avg.P_cD += s.P_cD;
        avg.P_swS += s.P_swS;
        avg.P_recD += s.P_recD;
        theta += op.omega_e * t_sw;
    }
    double inv = 1.0 / static_cast<double>(n);
    avg.P_cS *= inv;
    avg.P_cD *= inv;
    avg.P_swS *= inv;
    avg.P_recD *= inv;
    return avg;
}

}  // namespace

TEST_CASE("two-point V-I fit is the exact line") {
    Curve vi{{10.0, 1.5}, {20.0, 2.0}};
    AffineFit fit = fit_affine(vi);
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.slope == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("energy interpolation hits the endpoint") {
    Curve e{{12.5, 2.0e-3}, {25.0, 4.0e-3}};
    CHECK(interpolate_curve(e, 25.0) == doctest::Approx(4.0e-3));
    CHECK(interpolate_curve(e, 18.75) == doctest::Approx(3.0e-3));
}

TEST_CASE("fit_device rejects degenerate curves") {
    Curve flat{{10.0, 1.0}, {10.0, 2.0}};
    CHECK_THROWS_AS((void)fit_affine(flat), std::invalid_argument);
    Curve one{{10.0, 1.0}};
    CHECK_THROWS_AS((void)fit_affine(one), std::invalid_argument);
}

TEST_CASE("fixture device fit matches the offline least-squares values") {
    DeviceCharacteristics dev = fixture_device();
    // least squares over the fixture tables, computed independently offline
    CHECK(dev.U_CE == doctest::Approx(0.8410404624).epsilon(1e-8));
    CHECK(dev.r_CE == doctest::Approx(0.0384701349).epsilon(1e-8));
    CHECK(dev.U_F == doctest::Approx(0.8564739884).epsilon(1e-8));
    CHECK(dev.r_F == doctest::Approx(0.0225549133).epsilon(1e-8));
    CHECK(dev.E_sw_ref() == doctest::Approx(5.4e-3).epsilon(1e-9));
    CHECK(dev.E_rec_ref == doctest::Approx(2.05e-3).epsilon(1e-9));
}

TEST_CASE("zero current means zero loss in both models") {
    MachineParameters m = fixture_machine();
    DeviceCharacteristics dev = unit_device(1.0, 0.05);
    OperatingPoint op = synthetic_op(0.0, 0.5, 0.3, 50.0);
    LossSample to = loss_output_period(op, dev, m);
    CHECK(to.P_cS == 0.0);
    CHECK(to.P_cD == 0.0);
    CHECK(to.P_swS == 0.0);
    CHECK(to.P_recD == 0.0);
    LossSample sw = loss_switching_period(op, dev, m, 0.0, 0.0);
    CHECK(sw.igbt_total() == 0.0);
    CHECK(sw.diode_total() == 0.0);
}

TEST_CASE("output-period conduction loss at m = 0") {
    MachineParameters m = fixture_machine();
    DeviceCharacteristics dev = unit_device(1.0, 0.05);
    OperatingPoint op = synthetic_op(10.0, 0.0, 0.0, 50.0);
    LossSample to = loss_output_period(op, dev, m);
    // 10/(2 pi) + 0.05*100/8
    CHECK(to.P_cS == doctest::Approx(2.2165494309189535).epsilon(1e-12));
    CHECK(to.P_cD == doctest::Approx(2.2165494309189535).epsilon(1e-12));
}

TEST_CASE("switching-period conduction loss at m = 0") {
    MachineParameters m = fixture_machine();
    DeviceCharacteristics dev = unit_device(1.0, 0.05);
    OperatingPoint op = synthetic_op(10.0, 0.0, 0.0, 50.0);
    LossSample sw = loss_switching_period(op, dev, m, 10.0, kPi / 2.0);
    CHECK(sw.P_cS == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(sw.P_cD == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("negative half-wave contributes nothing to this device pair") {
    MachineParameters m = fixture_machine();
    DeviceCharacteristics dev = fixture_device();
    OperatingPoint op = synthetic_op(20.0, 0.4, 0.2, 10.0);
    LossSample sw = loss_switching_period(op, dev, m, -5.0, 4.0);
    CHECK(sw.P_cS == 0.0);
    CHECK(sw.P_cD == 0.0);
    CHECK(sw.P_swS == 0.0);
    CHECK(sw.P_recD == 0.0);
}

TEST_CASE("switching-period average reproduces the output-period formulas") {
    MachineParameters machine = fixture_machine();
    DeviceCharacteristics dev = fixture_device();
    for (double f_e : {1.0, 7.3, 24.2, 60.4, 213.0, 500.0}) {
        for (double m : {0.05, 0.3, 0.9}) {
            for (double phi : {0.0, 0.97, -1.2, kPi / 2.0}) {
                OperatingPoint op = synthetic_op(25.5, m, phi, f_e);
                LossSample to = loss_output_period(op, dev, machine);
                LossSample avg = average_switching_losses(op, dev, machine);
                CHECK(avg.P_cS == doctest::Approx(to.P_cS).epsilon(0.02));
                CHECK(avg.P_cD == doctest::Approx(to.P_cD).epsilon(0.02));
                CHECK(avg.P_swS == doctest::Approx(to.P_swS).epsilon(0.02));
                CHECK(avg.P_recD == doctest::Approx(to.P_recD).epsilon(0.02));
            }
        }
    }
}

TEST_CASE("IGBT and diode conduction losses match when m cos(phi) vanishes") {
    MachineParameters machine = fixture_machine();
    DeviceCharacteristics dev = unit_device(0.9, 0.03);
    for (auto [m, phi] : {std::pair{0.0, 0.3}, {0.7, kPi / 2.0}}) {
        OperatingPoint op = synthetic_op(15.0, m, phi, 50.0);
        LossSample to = loss_output_period(op, dev, machine);
        CHECK(to.P_cS == doctest::Approx(to.P_cD).epsilon(1e-12));
    }
}

TEST_CASE("every loss term is non-decreasing in I_m") {
    MachineParameters machine = fixture_machine();
    DeviceCharacteristics dev = fixture_device();
    LossSample prev;
    for (double I : {0.0, 1.0, 5.0, 10.0, 20.0, 25.0}) {
        OperatingPoint op = synthetic_op(I, 0.4, 0.5, 30.0);
        LossSample to = loss_output_period(op, dev, machine);
        CHECK(to.P_cS >= prev.P_cS);
        CHECK(to.P_cD >= prev.P_cD);
        CHECK(to.P_swS >= prev.P_swS);
        CHECK(to.P_recD >= prev.P_recD);
        prev = to;
    }
}

TEST_CASE("losses stay non-negative over the admissible input space") {
    MachineParameters machine = fixture_machine();
    DeviceCharacteristics dev = fixture_device();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> um(0.0, 1.0), uphi(-kPi, kPi), ui(0.0, 26.0),
        uth(0.0, 2.0 * kPi);
    for (int k = 0; k < 3000; ++k) {
        OperatingPoint op = synthetic_op(ui(rng), um(rng), uphi(rng), 40.0);
        LossSample to = loss_output_period(op, dev, machine);
        CHECK(to.P_cS >= 0.0);
        CHECK(to.P_cD >= 0.0);
        CHECK(to.P_swS >= 0.0);
        CHECK(to.P_recD >= 0.0);
        double theta = uth(rng);
        LossSample sw = loss_switching_period(op, dev, machine, op.I_m * std::sin(theta), theta);
        CHECK(sw.P_cS >= 0.0);
        CHECK(sw.P_cD >= 0.0);
        CHECK(sw.P_swS >= 0.0);
        CHECK(sw.P_recD >= 0.0);
    }
}

TEST_CASE("steady operating point agrees with the instantaneous-integration oracle") {
    // highway acceleration point: 362.78 rpm, 3.335 N·m
    MachineParameters machine = fixture_machine();
    DeviceCharacteristics dev = fixture_device();
    OperatingPoint op = operating_point({0.0, 362.78, 3.335}, machine);
    LossSample to = loss_output_period(op, dev, machine);

    // Independent evaluation: fine Riemann sum of the instantaneous
    // conduction loss and the per-switching-event energy sum over exactly
    // one output period, gated to the positive half-wave.
    double t_o = 2.0 * kPi / op.omega_e;
    const std::size_t n_fine = 200000;
    double dt = t_o / static_cast<double>(n_fine);
    double e_cS = 0.0, e_cD = 0.0;
    for (std::size_t k = 0; k < n_fine; ++k) {
        double th = op.omega_e * (static_cast<double>(k) + 0.5) * dt;
        double i = op.I_m * std::sin(th);
        if (i <= 0.0) continue;
        double duty = 0.5 * (1.0 + op.m * std::sin(th + op.phi));
        e_cS += (dev.U_CE * i + dev.r_CE * i * i) * duty * dt;
        e_cD += (dev.U_F * i + dev.r_F * i * i) * (1.0 - duty) * dt;
    }
    double t_sw = 1.0 / machine.f_sw;
    auto n_events = static_cast<std::size_t>(t_o / t_sw);
    double e_sw = 0.0, e_rec = 0.0;
    for (std::size_t n = 0; n < n_events; ++n) {
        double i = op.I_m * std::sin(op.omega_e * static_cast<double>(n) * t_sw);
        if (i <= 0.0) continue;
        e_sw += dev.E_sw_ref() * (i / dev.I_star) * (machine.U_dc / dev.U_star);
        e_rec += dev.E_rec_ref * (i / dev.I_star) * (machine.U_dc / dev.U_star);
    }
    CHECK(to.P_cS == doctest::Approx(e_cS / t_o).epsilon(0.085));
    CHECK(to.P_cD == doctest::Approx(e_cD / t_o).epsilon(0.085));
    CHECK(to.P_swS == doctest::Approx(e_sw / t_o).epsilon(0.085));
    CHECK(to.P_recD == doctest::Approx(e_rec / t_o).epsilon(0.085));
}
