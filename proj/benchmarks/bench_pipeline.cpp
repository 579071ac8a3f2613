#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "powerlife/electrical.hpp"
#include "powerlife/losses.hpp"
#include "powerlife/rainflow.hpp"
#include "powerlife/thermal.hpp"

using namespace powerlife;

namespace {

MachineParameters machine() {
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

DeviceCharacteristics device() {
    DeviceCharacteristics d;
    d.U_CE = 0.841;
    d.r_CE = 0.0385;
    d.U_F = 0.856;
    d.r_F = 0.0226;
    d.E_on_ref = d.E_off_ref = 2.7e-3;
    d.E_rec_ref = 2.05e-3;
    d.I_star = 25.0;
    d.U_star = 600.0;
    d.I_rated = 25.0;
    return d;
}

CauerLadder ladder() {
    CauerLadder l;
    l.rungs = {{0.08, 0.019}, {0.55, 0.095}, {1.55, 0.094}, {0.42, 1.19}};
    l.R_CH = 0.55;
    return l;
}

}  // namespace

static void BM_OperatingPoint(benchmark::State& state) {
    MachineParameters m = machine();
    double rpm = 0.0;
    for (auto _ : state) {
        rpm = rpm < 900.0 ? rpm + 0.1 : 0.0;
        benchmark::DoNotOptimize(operating_point({0.0, rpm, 2.5}, m));
    }
}
BENCHMARK(BM_OperatingPoint);

static void BM_LossOutputPeriod(benchmark::State& state) {
    MachineParameters m = machine();
    DeviceCharacteristics dev = device();
    OperatingPoint op = operating_point({0.0, 362.78, 3.335}, m);
    for (auto _ : state) benchmark::DoNotOptimize(loss_output_period(op, dev, m));
}
BENCHMARK(BM_LossOutputPeriod);

static void BM_LossSwitchingPeriod(benchmark::State& state) {
    MachineParameters m = machine();
    DeviceCharacteristics dev = device();
    OperatingPoint op = operating_point({0.0, 362.78, 3.335}, m);
    double theta = 0.0;
    for (auto _ : state) {
        double i_t = op.I_m * std::sin(theta);
        benchmark::DoNotOptimize(loss_switching_period(op, dev, m, i_t, theta));
        theta += op.omega_e * 1e-4;
        if (theta > 2.0 * std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    }
}
BENCHMARK(BM_LossSwitchingPeriod);

static void BM_ThermalStep(benchmark::State& state) {
    LadderSolver solver(ladder(), 55.0, 1e-4);
    double P = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(solver.step(P));
}
BENCHMARK(BM_ThermalStep);

static void BM_Rainflow(benchmark::State& state) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> mag(0.5, 25.0);
    std::vector<Extremum> extrema;
    double v = 60.0;
    int dir = 1;
    for (int i = 0; i < state.range(0); ++i) {
        v += dir * mag(rng);
        dir = -dir;
        extrema.push_back({0.1 * i, v, dir < 0});
    }
    for (auto _ : state) benchmark::DoNotOptimize(count_cycles(extrema));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rainflow)->Range(1024, 1 << 17)->Complexity();

static void BM_ExtremaTracking(benchmark::State& state) {
    std::vector<double> series(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < series.size(); ++i)
        series[i] = 70.0 + 10.0 * std::sin(0.01 * static_cast<double>(i)) +
                    3.0 * std::sin(0.7 * static_cast<double>(i));
    for (auto _ : state)
        benchmark::DoNotOptimize(find_extrema(series, 1e-4, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtremaTracking)->Range(1 << 12, 1 << 20)->Complexity();

BENCHMARK_MAIN();
