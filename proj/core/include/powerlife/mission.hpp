#pragma once

// Mission-profile ingestion: parsing, resampling, torque scaling, and
// speed/torque situation classification. Profiles live at the motor shaft
// (mechanical rpm, N·m); converting vehicle speed to shaft speed is the
// caller's responsibility.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace powerlife {

/// One sample of the load the inverter has to serve.
struct MissionSample {
    double t = 0.0;       ///< seconds, strictly increasing within a profile
    double speed = 0.0;   ///< mechanical rpm, >= 0
    double torque = 0.0;  ///< shaft torque in N·m, either sign
};

/// Ordered series of mission samples.
struct MissionProfile {
    std::vector<MissionSample> samples;
    std::string name;
    double dt_native = 0.0;  ///< uniform spacing in seconds, 0 until resampled

    [[nodiscard]] bool empty() const { return samples.empty(); }
    [[nodiscard]] std::size_t size() const { return samples.size(); }
    [[nodiscard]] double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

/// Quadrants of the speed-torque plane.
enum class SituationClass {
    LowSpeedHighTorque,   // I: acceleration
    LowSpeedLowTorque,    // II: constant low speed
    HighSpeedLowTorque,   // III: constant high speed
    HighSpeedHighTorque,  // IV: deceleration
};

[[nodiscard]] const char* to_string(SituationClass c);

/// Splits partitioning the plane; values on a split classify as "High".
struct SituationThresholds {
    double speed_split = 0.0;   ///< rpm
    double torque_split = 0.0;  ///< N·m, compared against |torque|
};

/// Fraction of samples falling into each situation class.
struct SituationShares {
    double shares[4] = {0.0, 0.0, 0.0, 0.0};  ///< indexed by SituationClass

    [[nodiscard]] double of(SituationClass c) const {
        return shares[static_cast<int>(c)];
    }
};

/// Parses the profile CSV format (header `time_s,speed_rpm,torque_nm`).
/// Native timestamps are preserved; no resampling is applied.
/// Throws std::runtime_error naming the offending line on malformed rows,
/// non-monotone time, or non-finite values.
[[nodiscard]] MissionProfile parse_profile(std::istream& source, const std::string& name);

/// Convenience overload reading from a file path.
[[nodiscard]] MissionProfile parse_profile_file(const std::string& path, const std::string& name = "");

/// Linear interpolation onto a uniform grid from the first to the last
/// timestamp. dt must be positive and no larger than the profile duration.
[[nodiscard]] MissionProfile resample(const MissionProfile& profile, double dt);

/// Multiplies every torque by factor (> 0); speed is unchanged.
[[nodiscard]] MissionProfile scale_torque(const MissionProfile& profile, double factor);

/// Linear interpolation of (speed, torque) at time t; clamps to the ends.
[[nodiscard]] MissionSample interpolate(const MissionProfile& profile, double t);

/// Quadrant of one sample. Boundary values classify as "High".
[[nodiscard]] SituationClass classify(const MissionSample& sample, const SituationThresholds& thresholds);

/// Per-class time shares over a whole profile.
[[nodiscard]] SituationShares situation_shares(const MissionProfile& profile,
                                               const SituationThresholds& thresholds);

/// Midpoints of the profile's speed and |torque| ranges; the default split
/// choice when none is configured.
[[nodiscard]] SituationThresholds default_thresholds(const MissionProfile& profile);

}  // namespace powerlife
