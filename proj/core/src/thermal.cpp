#include "powerlife/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace powerlife {

LadderSolver::LadderSolver(const CauerLadder& ladder, double T_H, double dt)
    : n_(ladder.rungs.size()), T_H_(T_H), dt_(dt) {
    if (!ladder.valid()) throw std::invalid_argument("LadderSolver: invalid ladder");
    if (!(dt > 0.0)) throw std::invalid_argument("LadderSolver: dt must be positive");
    if (dt > 0.010) throw std::invalid_argument("LadderSolver: dt above the 10 ms accuracy budget");

    // conductances between node i and i+1; the last node discharges through
    // R_n + R_CH into the heatsink (the case node carries no capacitance)
    std::vector<double> g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[i] = 1.0 / ladder.rungs[i].R;
    g[n_ - 1] = 1.0 / (ladder.rungs[n_ - 1].R + ladder.R_CH);

    cap_over_dt_.resize(n_);
    lower_.resize(n_);
    std::vector<double> diag(n_), upper(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cap_over_dt_[i] = ladder.rungs[i].C / dt;
        double g_prev = (i > 0) ? g[i - 1] : 0.0;
        diag[i] = cap_over_dt_[i] + g_prev + g[i];
        lower_[i] = (i > 0) ? -g[i - 1] : 0.0;
        upper[i] = (i + 1 < n_) ? -g[i] : 0.0;
    }

    // Thomas factorization of the constant tridiagonal matrix
    cprime_.resize(n_);
    inv_den_.resize(n_);
    inv_den_[0] = 1.0 / diag[0];
    cprime_[0] = upper[0] * inv_den_[0];
    for (std::size_t i = 1; i < n_; ++i) {
        inv_den_[i] = 1.0 / (diag[i] - lower_[i] * cprime_[i - 1]);
        cprime_[i] = upper[i] * inv_den_[i];
    }

    rhs_.resize(n_);
    x_.assign(n_, 0.0);
    T_.assign(n_, T_H_);
}

void LadderSolver::reset() {
    x_.assign(n_, 0.0);
    T_.assign(n_, T_H_);
}

void LadderSolver::reset(std::span<const double> node_temperatures) {
    if (node_temperatures.size() != n_)
        throw std::invalid_argument("LadderSolver::reset: node count mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        T_[i] = node_temperatures[i];
        x_[i] = node_temperatures[i] - T_H_;
    }
}

double LadderSolver::step(double P) {
    if (!std::isfinite(P)) throw std::invalid_argument("LadderSolver::step: non-finite power");

    // solved in rise-above-heatsink form: the T_H source cancels, so an
    // equilibrated ladder with P = 0 stays bit-exactly at T_H
    for (std::size_t i = 0; i < n_; ++i) rhs_[i] = cap_over_dt_[i] * x_[i];
    rhs_[0] += P;

    rhs_[0] *= inv_den_[0];
    for (std::size_t i = 1; i < n_; ++i)
        rhs_[i] = (rhs_[i] - lower_[i] * rhs_[i - 1]) * inv_den_[i];
    x_[n_ - 1] = rhs_[n_ - 1];
    for (std::size_t i = n_ - 1; i-- > 0;)
        x_[i] = rhs_[i] - cprime_[i] * x_[i + 1];
    for (std::size_t i = 0; i < n_; ++i) T_[i] = T_H_ + x_[i];
    return T_[0];
}

ThermalState step(const ThermalState& state, double P_igbt, double P_diode,
                  const ThermalNetwork& net, double dt) {
    LadderSolver igbt(net.igbt, net.T_H, dt);
    LadderSolver diode(net.diode, net.T_H, dt);
    if (!state.igbt_nodes.empty()) igbt.reset(state.igbt_nodes);
    if (!state.diode_nodes.empty()) diode.reset(state.diode_nodes);
    igbt.step(P_igbt);
    diode.step(P_diode);

    ThermalState next;
    next.igbt_nodes.assign(igbt.nodes().begin(), igbt.nodes().end());
    next.diode_nodes.assign(diode.nodes().begin(), diode.nodes().end());
    next.t = state.t + dt;
    return next;
}

TemperatureSeries simulate(std::span<const LossSample> losses, const ThermalNetwork& net,
                           double dt) {
    TemperatureSeries series;
    series.dt = dt;
    if (losses.empty()) return series;
    series.t0 = losses.front().t;

    LadderSolver igbt(net.igbt, net.T_H, dt);
    LadderSolver diode(net.diode, net.T_H, dt);
    series.igbt_C.reserve(losses.size());
    series.diode_C.reserve(losses.size());
    for (const auto& loss : losses) {
        series.igbt_C.push_back(igbt.step(loss.igbt_total()));
        series.diode_C.push_back(diode.step(loss.diode_total()));
    }
    return series;
}

}  // namespace powerlife
