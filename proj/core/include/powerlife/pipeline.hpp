#pragma once

// Pipeline orchestration: profile -> electrical -> loss -> thermal ->
// rainflow -> damage for every selected (profile x loss model) scenario.
// Scenarios run in parallel worker threads and stream their sample loops,
// so memory stays proportional to the reversal count, not the grid size.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "powerlife/config.hpp"
#include "powerlife/lifetime.hpp"

namespace powerlife {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    std::vector<std::string> scenario_filter;  ///< "<profile>" or "<profile>:<model>"
    std::string out_dir_override;
    bool plots = false;
    unsigned threads = 0;  ///< 0: POWERLIFE_THREADS env var, else hardware
};

/// Everything one scenario produced.
struct ScenarioOutcome {
    std::string name;  ///< "<profile>:<model>"
    std::string profile;
    std::string model;
    bool ok = false;
    std::string error;
    std::size_t steps = 0;
    double dt = 0.0;
    std::size_t overmodulation_count = 0;
    std::vector<std::pair<std::string, double>> timings_ms;
    std::vector<std::string> outputs;          ///< files written
    std::vector<ScenarioDamage> damage;        ///< igbt + diode
    // decimated traces kept for plotting
    std::vector<double> trace_t;
    std::vector<double> trace_Tj_igbt, trace_Tj_diode;
    std::vector<double> trace_P_igbt, trace_P_diode;
};

struct RunManifest {
    std::string config_hash;
    std::string version;
    bool all_ok = false;
    std::vector<ScenarioOutcome> scenarios;
    std::vector<ModelComparison> comparisons;  ///< filled when both models ran
    std::string out_dir;
    std::vector<std::string> outputs;  ///< every file written, manifest last
};

/// Executes the configured scenarios, writes per-scenario CSV/JSON
/// artifacts plus comparison.json and manifest.json, and returns the
/// manifest. A failing scenario is recorded and does not disturb the
/// others.
[[nodiscard]] RunManifest run(const RunConfig& config, const RunOptions& options = {});

/// Writes per-scenario loss/temperature traces and the damage bar chart as
/// SVG files under <out_dir>/plots. Scenarios without series data are
/// skipped with a warning on stderr. Returns the files written.
std::vector<std::string> emit_plots(const RunManifest& manifest, const std::string& out_dir);

/// Resolves the device characteristics from a config (fit curves or take
/// the literal values).
[[nodiscard]] DeviceCharacteristics resolve_device(const DeviceConfig& device);

}  // namespace powerlife
