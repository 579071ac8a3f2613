#include "powerlife/rainflow.hpp"

#include <cmath>
#include <stdexcept>

namespace powerlife {

ExtremaTracker::ExtremaTracker(double hysteresis) : hysteresis_(hysteresis) {
    if (hysteresis < 0.0) throw std::invalid_argument("ExtremaTracker: hysteresis must be >= 0");
}

void ExtremaTracker::commit(double t, double T) {
    stack_.push_back({t, T, false});

    // restore the invariants behind the top of the stack
    for (;;) {
        std::size_t n = stack_.size();
        // drop a committed point that is no longer a strict extremum
        // between its neighbours (can happen after merges)
        if (n >= 3) {
            double a = stack_[n - 3].T, b = stack_[n - 2].T, c = stack_[n - 1].T;
            if ((b - a) * (c - b) >= 0.0) {
                stack_.erase(stack_.end() - 2);
                continue;
            }
        }
        // merge an interior reversal pair within the hysteresis band once a
        // following point confirms it; never touch the first sample
        n = stack_.size();
        if (n >= 4 && std::abs(stack_[n - 2].T - stack_[n - 3].T) <= hysteresis_ &&
            hysteresis_ > 0.0) {
            stack_.erase(stack_.end() - 3, stack_.end() - 1);
            continue;
        }
        break;
    }
}

void ExtremaTracker::push(double t, double T) {
    if (!std::isfinite(T)) throw std::invalid_argument("ExtremaTracker: non-finite temperature");
    if (seen_ == 0) {
        stack_.push_back({t, T, false});  // first sample is always an endpoint
        prev_t_ = move_t_ = t;
        prev_T_ = move_T_ = T;
        ++seen_;
        return;
    }
    if (T != prev_T_) {
        int d = T > prev_T_ ? 1 : -1;
        if (direction_ != 0 && d != direction_) commit(move_t_, move_T_);
        direction_ = d;
        move_t_ = t;
        move_T_ = T;
    }
    prev_t_ = t;
    prev_T_ = T;
    ++seen_;
}

std::vector<Extremum> ExtremaTracker::finish() {
    if (seen_ == 0) return {};
    if (seen_ > 1 && (stack_.empty() || stack_.back().t != prev_t_))
        commit(prev_t_, prev_T_);  // last sample is always an endpoint

    // assign alternating kinds from the value pattern
    for (std::size_t i = 0; i < stack_.size(); ++i) {
        if (i + 1 < stack_.size())
            stack_[i].is_peak = stack_[i].T > stack_[i + 1].T;
        else if (i > 0)
            stack_[i].is_peak = stack_[i].T > stack_[i - 1].T;
    }
    return std::move(stack_);
}

std::vector<Extremum> find_extrema(std::span<const double> series, double dt, double hysteresis,
                                   double t0) {
    ExtremaTracker tracker(hysteresis);
    for (std::size_t k = 0; k < series.size(); ++k)
        tracker.push(t0 + static_cast<double>(k) * dt, series[k]);
    return tracker.finish();
}

namespace {

ThermalCycle make_cycle(const Extremum& a, const Extremum& b, double count) {
    ThermalCycle c;
    c.dT = std::abs(a.T - b.T);
    c.T_max = a.T > b.T ? a.T : b.T;
    c.T_mean = 0.5 * (a.T + b.T);
    c.t_on = std::abs(b.t - a.t);
    c.count = count;
    return c;
}

}  // namespace

CycleTable count_cycles(std::span<const Extremum> extrema, std::string source) {
    CycleTable table;
    table.source = std::move(source);

    std::vector<Extremum> st;
    st.reserve(64);
    for (const auto& e : extrema) {
        st.push_back(e);
        while (st.size() >= 4) {
            std::size_t n = st.size();
            double r_outer = std::abs(st[n - 3].T - st[n - 4].T);
            double r_inner = std::abs(st[n - 2].T - st[n - 3].T);
            double r_next = std::abs(st[n - 1].T - st[n - 2].T);
            if (r_inner <= r_outer && r_inner <= r_next) {
                if (r_inner > 0.0)
                    table.cycles.push_back(make_cycle(st[n - 3], st[n - 2], 1.0));
                st.erase(st.end() - 3, st.end() - 1);
            } else {
                break;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
        if (std::abs(st[i].T - st[i + 1].T) > 0.0)
            table.cycles.push_back(make_cycle(st[i], st[i + 1], 0.5));
    }
    return table;
}

}  // namespace powerlife
