#pragma once

// Rainflow cycle extraction from junction-temperature series: reduce the
// series to alternating extrema (with optional hysteresis merging of small
// reversals), then apply four-point rainflow counting with the residue
// emitted as half cycles.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace powerlife {

/// A reversal of the reduced temperature series.
struct Extremum {
    double t = 0.0;  ///< seconds
    double T = 0.0;  ///< deg C
    bool is_peak = false;
};

/// One counted thermal cycle.
struct ThermalCycle {
    double dT = 0.0;     ///< range, K
    double T_max = 0.0;  ///< deg C
    double T_mean = 0.0; ///< deg C
    double t_on = 0.0;   ///< heating duration: time between the cycle's
                         ///< valley and peak reversals, s
    double count = 0.0;  ///< 1.0 for a closed cycle, 0.5 for residue

    [[nodiscard]] double T_min() const { return T_max - dT; }
};

/// Cycles extracted from one series.
struct CycleTable {
    std::vector<ThermalCycle> cycles;
    std::string source;  ///< device / scenario / loss-model label

    [[nodiscard]] double total_count() const {
        double c = 0.0;
        for (const auto& cy : cycles) c += cy.count;
        return c;
    }
    [[nodiscard]] double max_range() const {
        double r = 0.0;
        for (const auto& cy : cycles) r = r > cy.dT ? r : cy.dT;
        return r;
    }
};

/// Streaming turning-point extractor. Feed samples in time order; the first
/// and last samples are always kept as endpoints. Interior reversal pairs
/// whose range does not exceed the hysteresis are merged away.
class ExtremaTracker {
public:
    explicit ExtremaTracker(double hysteresis = 0.0);

    void push(double t, double T);

    /// Appends the final sample and returns the reduced extremum sequence.
    [[nodiscard]] std::vector<Extremum> finish();

    [[nodiscard]] std::size_t samples_seen() const { return seen_; }

private:
    void commit(double t, double T);

    double hysteresis_;
    std::vector<Extremum> stack_;
    std::size_t seen_ = 0;
    double prev_t_ = 0.0, prev_T_ = 0.0;
    double move_t_ = 0.0, move_T_ = 0.0;  // last sample where the value changed
    int direction_ = 0;
};

/// Reduced extrema of a uniformly sampled series (samples at t0 + k*dt).
[[nodiscard]] std::vector<Extremum> find_extrema(std::span<const double> series, double dt,
                                                 double hysteresis, double t0 = 0.0);

/// Four-point rainflow counting over an alternating extremum sequence.
/// Closed cycles are extracted whenever an inner range is enclosed by its
/// neighbours; the residue contributes half cycles. Zero-range pairs are
/// dropped (they carry no damage).
[[nodiscard]] CycleTable count_cycles(std::span<const Extremum> extrema,
                                      std::string source = {});

}  // namespace powerlife
