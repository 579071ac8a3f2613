#include "powerlife/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace powerlife {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw std::runtime_error("config: " + key + ": " + what);
}

double require_pos(const json& j, const std::string& key) {
    if (!j.contains(key)) fail(key, "missing");
    double v = j.at(key).get<double>();
    if (!(v > 0.0)) fail(key, "must be positive");
    return v;
}

std::string resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_absolute()) return path.string();
    return (base / path).lexically_normal().string();
}

CauerLadder parse_ladder(const json& j, const std::string& key) {
    if (!j.contains(key)) fail(key, "missing");
    const json& l = j.at(key);
    auto R = l.at("R_JC").get<std::vector<double>>();
    auto C = l.at("C_JC").get<std::vector<double>>();
    if (R.size() != 4 || C.size() != 4)
        fail(key, "R_JC and C_JC must each hold exactly 4 rungs");
    CauerLadder ladder;
    for (std::size_t i = 0; i < R.size(); ++i) {
        if (!(R[i] > 0.0) || !(C[i] > 0.0)) fail(key, "rung values must be positive");
        ladder.rungs.push_back({R[i], C[i]});
    }
    ladder.R_CH = l.at("R_CH").get<double>();
    if (ladder.R_CH < 0.0) fail(key + ".R_CH", "must be >= 0");
    return ladder;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();

    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config: " + path + ": " + e.what());
    }

    fs::path base = fs::path(path).parent_path();
    RunConfig cfg;
    cfg.config_path = path;
    cfg.config_hash = fnv1a_hex(j.dump());

    if (!j.contains("profiles") || !j.at("profiles").is_array() || j.at("profiles").empty())
        fail("profiles", "must be a non-empty array");
    for (const auto& p : j.at("profiles")) {
        ProfileConfig pc;
        pc.name = p.at("name").get<std::string>();
        pc.path = resolve(base, p.at("path").get<std::string>());
        pc.torque_scale = p.value("torque_scale", 1.0);
        if (!(pc.torque_scale > 0.0)) fail("profiles.torque_scale", "must be positive");
        if (!fs::exists(pc.path)) fail("profiles.path", "file not found: " + pc.path);
        cfg.profiles.push_back(std::move(pc));
    }

    const json& m = j.at("machine");
    cfg.machine.R_s = require_pos(m, "R_s");
    cfg.machine.L_d = require_pos(m, "L_d");
    cfg.machine.L_q = require_pos(m, "L_q");
    cfg.machine.Psi_f = require_pos(m, "Psi_f");
    cfg.machine.p_n = m.at("pole_pairs").get<int>();
    if (cfg.machine.p_n < 1) fail("machine.pole_pairs", "must be >= 1");
    cfg.machine.U_dc = require_pos(m, "U_dc");
    cfg.machine.f_sw = require_pos(m, "f_sw");
    cfg.machine.tau_max = require_pos(m, "tau_max");

    const json& d = j.at("device");
    if (d.contains("characteristics")) {
        const json& c = d.at("characteristics");
        DeviceCharacteristics dev;
        dev.U_CE = require_pos(c, "U_CE");
        dev.r_CE = require_pos(c, "r_CE");
        dev.U_F = require_pos(c, "U_F");
        dev.r_F = require_pos(c, "r_F");
        dev.E_on_ref = require_pos(c, "E_on_ref");
        dev.E_off_ref = require_pos(c, "E_off_ref");
        dev.E_rec_ref = require_pos(c, "E_rec_ref");
        dev.I_star = require_pos(c, "I_star");
        dev.U_star = require_pos(c, "U_star");
        dev.I_rated = require_pos(c, "I_rated");
        cfg.device.characteristics = dev;
    } else if (d.contains("curves")) {
        const json& c = d.at("curves");
        cfg.device.vi_igbt_path = resolve(base, c.at("vi_igbt").get<std::string>());
        cfg.device.vi_diode_path = resolve(base, c.at("vi_diode").get<std::string>());
        cfg.device.esw_path = resolve(base, c.at("esw").get<std::string>());
        cfg.device.erec_path = resolve(base, c.at("erec").get<std::string>());
        for (const std::string& p : {cfg.device.vi_igbt_path, cfg.device.vi_diode_path,
                                     cfg.device.esw_path, cfg.device.erec_path})
            if (!fs::exists(p)) fail("device.curves", "file not found: " + p);
        cfg.device.I_star = require_pos(c, "I_star");
        cfg.device.U_star = require_pos(c, "U_star");
        cfg.device.I_rated = require_pos(c, "I_rated");
    } else {
        fail("device", "needs either 'characteristics' or 'curves'");
    }

    const json& t = j.at("thermal");
    cfg.thermal.T_H = t.at("T_H").get<double>();
    cfg.thermal.igbt = parse_ladder(t, "igbt");
    cfg.thermal.diode = parse_ladder(t, "diode");

    if (j.contains("lifetime")) {
        const json& lt = j.at("lifetime");
        cfg.lifetime.A = lt.value("A", cfg.lifetime.A);
        cfg.lifetime.beta1 = lt.value("beta1", cfg.lifetime.beta1);
        cfg.lifetime.beta2 = lt.value("beta2", cfg.lifetime.beta2);
        cfg.lifetime.beta3 = lt.value("beta3", cfg.lifetime.beta3);
        cfg.lifetime.t_on_min = lt.value("t_on_min", cfg.lifetime.t_on_min);
        cfg.lifetime.t_on_max = lt.value("t_on_max", cfg.lifetime.t_on_max);
        if (!cfg.lifetime.valid()) fail("lifetime", "invalid parameters");
    }

    cfg.models = j.value("models", std::vector<std::string>{"t_o", "t_sw"});
    if (cfg.models.empty()) fail("models", "must select at least one loss model");
    std::set<std::string> seen;
    for (const auto& name : cfg.models) {
        if (name != "t_o" && name != "t_sw") fail("models", "unknown model '" + name + "'");
        if (!seen.insert(name).second) fail("models", "duplicate model '" + name + "'");
    }

    if (j.contains("grid")) cfg.dt_electrical = j.at("grid").value("dt_electrical", 1e-3);
    if (!(cfg.dt_electrical > 0.0)) fail("grid.dt_electrical", "must be positive");
    if (j.contains("rainflow")) cfg.rainflow_hysteresis = j.at("rainflow").value("hysteresis_K", 0.1);
    if (cfg.rainflow_hysteresis < 0.0) fail("rainflow.hysteresis_K", "must be >= 0");
    cfg.annual_driving_hours = j.value("annual_driving_hours", 500.0);
    if (!(cfg.annual_driving_hours > 0.0)) fail("annual_driving_hours", "must be positive");
    cfg.comparison_threshold = j.value("comparison_threshold", 2.0);

    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.output.directory = o.value("directory", cfg.output.directory);
        cfg.output.series_stride_t_o = o.value("series_stride_t_o", cfg.output.series_stride_t_o);
        cfg.output.series_stride_t_sw = o.value("series_stride_t_sw", cfg.output.series_stride_t_sw);
        if (cfg.output.series_stride_t_o < 1 || cfg.output.series_stride_t_sw < 1)
            fail("output.series_stride", "must be >= 1");
    }
    return cfg;
}

}  // namespace powerlife
