#pragma once

// Run configuration. A single JSON file drives the whole pipeline; the
// exact schema is documented in the README. Relative paths inside the file
// resolve against the directory of the config file itself, so a run is
// reproducible from any working directory.

#include <optional>
#include <string>
#include <vector>

#include "powerlife/device.hpp"
#include "powerlife/electrical.hpp"
#include "powerlife/lifetime.hpp"
#include "powerlife/thermal.hpp"

namespace powerlife {

/// One mission profile entry.
struct ProfileConfig {
    std::string name;
    std::string path;
    double torque_scale = 1.0;
};

/// Where the device characteristics come from: curve CSVs to fit, or
/// already-fitted values.
struct DeviceConfig {
    std::optional<DeviceCharacteristics> characteristics;
    std::string vi_igbt_path, vi_diode_path, esw_path, erec_path;  // curve route
    double I_star = 0.0, U_star = 0.0, I_rated = 0.0;

    [[nodiscard]] bool uses_curves() const { return !characteristics.has_value(); }
};

/// Output controls. Series CSVs are written every `stride` samples of the
/// scenario grid; rainflow always runs at full resolution.
struct OutputConfig {
    std::string directory = "out";
    int series_stride_t_o = 1;
    int series_stride_t_sw = 10;
};

struct RunConfig {
    std::vector<ProfileConfig> profiles;
    MachineParameters machine;
    DeviceConfig device;
    ThermalNetwork thermal;
    LifetimeParams lifetime;
    std::vector<std::string> models;  ///< subset of {"t_o", "t_sw"}
    double dt_electrical = 1e-3;      ///< t_o evaluation grid, s
    double rainflow_hysteresis = 0.1; ///< K
    double annual_driving_hours = 500.0;
    double comparison_threshold = 2.0;
    OutputConfig output;

    std::string config_path;  ///< file the config was loaded from
    std::string config_hash;  ///< FNV-1a of the canonical JSON text
};

/// Loads and validates a config file. Throws std::runtime_error with the
/// offending key on schema violations.
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Canonical hash used in the run manifest.
[[nodiscard]] std::string fnv1a_hex(const std::string& text);

}  // namespace powerlife
