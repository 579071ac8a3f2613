#include "powerlife/mission.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace powerlife {

const char* to_string(SituationClass c) {
    switch (c) {
        case SituationClass::LowSpeedHighTorque: return "low_speed_high_torque";
        case SituationClass::LowSpeedLowTorque: return "low_speed_low_torque";
        case SituationClass::HighSpeedLowTorque: return "high_speed_low_torque";
        case SituationClass::HighSpeedHighTorque: return "high_speed_high_torque";
    }
    return "?";
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, std::size_t line, const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

bool parse_field(const std::string& field, double& out) {
    std::size_t pos = 0;
    try {
        out = std::stod(field, &pos);
    } catch (const std::exception&) {
        return false;
    }
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    return pos == field.size();
}

}  // namespace

MissionProfile parse_profile(std::istream& source, const std::string& name) {
    MissionProfile profile;
    profile.name = name;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(source, line)) parse_fail(name, 1, "empty stream");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "time_s,speed_rpm,torque_nm")
        parse_fail(name, line_no, "expected header 'time_s,speed_rpm,torque_nm', got '" + line + "'");

    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::istringstream row(line);
        std::string f0, f1, f2, extra;
        if (!std::getline(row, f0, ',') || !std::getline(row, f1, ',') || !std::getline(row, f2, ','))
            parse_fail(name, line_no, "expected 3 comma-separated fields");
        if (std::getline(row, extra, ','))
            parse_fail(name, line_no, "expected 3 comma-separated fields, got more");

        MissionSample s;
        if (!parse_field(f0, s.t) || !parse_field(f1, s.speed) || !parse_field(f2, s.torque))
            parse_fail(name, line_no, "malformed numeric field");
        if (!std::isfinite(s.t) || !std::isfinite(s.speed) || !std::isfinite(s.torque))
            parse_fail(name, line_no, "non-finite value");
        if (!profile.samples.empty() && s.t <= profile.samples.back().t)
            parse_fail(name, line_no, "time not strictly increasing");
        if (s.speed < 0.0)
            parse_fail(name, line_no, "negative speed (reverse operation not modeled)");
        profile.samples.push_back(s);
    }
    if (profile.samples.empty()) parse_fail(name, line_no, "no samples");
    return profile;
}

MissionProfile parse_profile_file(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file '" + path + "'");
    std::string label = name.empty() ? path : name;
    return parse_profile(in, label);
}

MissionSample interpolate(const MissionProfile& profile, double t) {
    const auto& s = profile.samples;
    if (s.empty()) throw std::invalid_argument("interpolate: empty profile");
    if (t <= s.front().t) return {t, s.front().speed, s.front().torque};
    if (t >= s.back().t) return {t, s.back().speed, s.back().torque};
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double v, const MissionSample& m) { return v < m.t; });
    const MissionSample& b = *it;
    const MissionSample& a = *(it - 1);
    double f = (t - a.t) / (b.t - a.t);
    return {t, a.speed + f * (b.speed - a.speed), a.torque + f * (b.torque - a.torque)};
}

MissionProfile resample(const MissionProfile& profile, double dt) {
    if (profile.empty()) throw std::invalid_argument("resample: empty profile");
    if (!(dt > 0.0)) throw std::invalid_argument("resample: dt must be positive");
    double duration = profile.duration();
    if (dt > duration && duration > 0.0)
        throw std::invalid_argument("resample: dt exceeds profile duration");

    MissionProfile out;
    out.name = profile.name;
    out.dt_native = dt;
    double t0 = profile.samples.front().t;
    auto n = static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
    out.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.samples.push_back(interpolate(profile, t0 + static_cast<double>(k) * dt));
    }
    return out;
}

MissionProfile scale_torque(const MissionProfile& profile, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale_torque: factor must be positive");
    MissionProfile out = profile;
    for (auto& s : out.samples) s.torque *= factor;
    return out;
}

SituationClass classify(const MissionSample& sample, const SituationThresholds& thresholds) {
    bool high_speed = sample.speed >= thresholds.speed_split;
    bool high_torque = std::abs(sample.torque) >= thresholds.torque_split;
    if (high_speed) {
        return high_torque ? SituationClass::HighSpeedHighTorque
                           : SituationClass::HighSpeedLowTorque;
    }
    return high_torque ? SituationClass::LowSpeedHighTorque
                       : SituationClass::LowSpeedLowTorque;
}

SituationShares situation_shares(const MissionProfile& profile,
                                 const SituationThresholds& thresholds) {
    SituationShares shares;
    if (profile.empty()) return shares;
    for (const auto& s : profile.samples)
        shares.shares[static_cast<int>(classify(s, thresholds))] += 1.0;
    for (double& v : shares.shares) v /= static_cast<double>(profile.size());
    return shares;
}

SituationThresholds default_thresholds(const MissionProfile& profile) {
    if (profile.empty()) throw std::invalid_argument("default_thresholds: empty profile");
    double smin = profile.samples.front().speed, smax = smin;
    double qmin = std::abs(profile.samples.front().torque), qmax = qmin;
    for (const auto& s : profile.samples) {
        smin = std::min(smin, s.speed);
        smax = std::max(smax, s.speed);
        double q = std::abs(s.torque);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
    }
    return {0.5 * (smin + smax), 0.5 * (qmin + qmax)};
}

}  // namespace powerlife
