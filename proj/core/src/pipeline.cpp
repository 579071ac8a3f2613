#include "powerlife/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "powerlife/losses.hpp"
#include "powerlife/mission.hpp"
#include "powerlife/rainflow.hpp"
#include "powerlife/svg.hpp"
#include "powerlife/thermal.hpp"

namespace powerlife {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '_');
    return out;
}

/// Buffered CSV writer with round-trip-exact doubles.
class CsvFile {
public:
    CsvFile(const fs::path& path, const std::string& header) : path_(path.string()) {
        out_ = std::fopen(path_.c_str(), "w");
        if (!out_) throw std::runtime_error("cannot write '" + path_ + "'");
        std::fputs(header.c_str(), out_);
        std::fputc('\n', out_);
    }
    ~CsvFile() {
        if (out_) std::fclose(out_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) std::fputc(',', out_);
            std::fprintf(out_, "%.17g", v);
            first = false;
        }
        std::fputc('\n', out_);
    }

    void close() {
        if (out_) {
            std::fclose(out_);
            out_ = nullptr;
        }
    }

private:
    std::string path_;
    std::FILE* out_ = nullptr;
};

/// Marching linear interpolator over a mission profile.
class MissionCursor {
public:
    explicit MissionCursor(const MissionProfile& profile) : s_(profile.samples) {}

    MissionSample at(double t) {
        if (t >= s_.back().t) return {t, s_.back().speed, s_.back().torque};
        while (j_ + 2 < s_.size() && s_[j_ + 1].t <= t) ++j_;
        const MissionSample& a = s_[j_];
        const MissionSample& b = s_[j_ + 1];
        double f = (t - a.t) / (b.t - a.t);
        return {t, a.speed + f * (b.speed - a.speed), a.torque + f * (b.torque - a.torque)};
    }

private:
    const std::vector<MissionSample>& s_;
    std::size_t j_ = 0;
};

struct DeviceSeriesStats {
    double sum = 0.0, max = -1e300;
    std::size_t n = 0;

    void push(double v) {
        sum += v;
        max = std::max(max, v);
        ++n;
    }
    [[nodiscard]] double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
};

void write_cycles_csv(const fs::path& path, const CycleTable& table) {
    CsvFile csv(path, "dTj_K,Tjmax_C,Tjm_C,ton_s,count");
    for (const auto& c : table.cycles) csv.row({c.dT, c.T_max, c.T_mean, c.t_on, c.count});
}

json damage_entry(const ScenarioDamage& d, const DeviceSeriesStats& stats) {
    return json{{"D_run", d.D_run},
                {"D_annual", d.D_annual},
                {"n_cycles", d.n_cycles},
                {"max_dTj_K", d.max_dT},
                {"mean_Tj_C", stats.mean()},
                {"max_Tj_C", stats.max}};
}

ScenarioOutcome run_scenario(const RunConfig& cfg, const MissionProfile& profile,
                             const std::string& model, const DeviceCharacteristics& dev,
                             const fs::path& out_dir) {
    ScenarioOutcome outcome;
    outcome.profile = profile.name;
    outcome.model = model;
    outcome.name = profile.name + ":" + model;

    const bool switching = model == "t_sw";
    const double dt = switching ? 1.0 / cfg.machine.f_sw : cfg.dt_electrical;
    const int stride = switching ? cfg.output.series_stride_t_sw : cfg.output.series_stride_t_o;
    outcome.dt = dt;

    fs::path dir = out_dir / (sanitize(profile.name) + "_" + sanitize(model));
    std::string stage = "setup";
    try {
        fs::create_directories(dir);

        stage = "mission";
        auto t_stage = Clock::now();
        if (profile.empty()) throw std::runtime_error("profile is empty");
        for (const auto& s : profile.samples)
            if (std::abs(s.torque) > cfg.machine.tau_max)
                throw std::runtime_error("scaled torque exceeds machine.tau_max");
        outcome.timings_ms.emplace_back("mission", ms_since(t_stage));

        stage = "simulate";
        t_stage = Clock::now();
        const double t0 = profile.samples.front().t;
        const auto n = static_cast<std::size_t>(std::floor(profile.duration() / dt + 1e-9)) + 1;
        outcome.steps = n;

        MissionCursor cursor(profile);
        LadderSolver igbt(cfg.thermal.igbt, cfg.thermal.T_H, dt);
        LadderSolver diode(cfg.thermal.diode, cfg.thermal.T_H, dt);
        ExtremaTracker track_igbt(cfg.rainflow_hysteresis);
        ExtremaTracker track_diode(cfg.rainflow_hysteresis);
        DeviceSeriesStats stats_igbt, stats_diode;
        CsvFile losses_csv(dir / "losses.csv", "t_s,P_cS_W,P_swS_W,P_cD_W,P_recD_W");
        CsvFile tj_csv(dir / "tj.csv", "t_s,Tj_igbt_C,Tj_diode_C");

        double theta = 0.0;
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = t0 + static_cast<double>(k) * dt;
            MissionSample sample = cursor.at(t);
            OperatingPoint op = operating_point(sample, cfg.machine);
            if (op.overmodulated) ++outcome.overmodulation_count;

            LossSample loss;
            if (switching) {
                double i_t = op.omega_e == 0.0 ? op.I_m : op.I_m * std::sin(theta);
                loss = loss_switching_period(op, dev, cfg.machine, i_t, theta);
                theta += op.omega_e * dt;
                if (theta >= two_pi) theta -= two_pi;
            } else {
                loss = loss_output_period(op, dev, cfg.machine);
            }
            loss.t = t;

            double Tj_igbt = igbt.step(loss.igbt_total());
            double Tj_diode = diode.step(loss.diode_total());
            track_igbt.push(t, Tj_igbt);
            track_diode.push(t, Tj_diode);
            stats_igbt.push(Tj_igbt);
            stats_diode.push(Tj_diode);

            if (k % static_cast<std::size_t>(stride) == 0) {
                losses_csv.row({t, loss.P_cS, loss.P_swS, loss.P_cD, loss.P_recD});
                tj_csv.row({t, Tj_igbt, Tj_diode});
                outcome.trace_t.push_back(t);
                outcome.trace_Tj_igbt.push_back(Tj_igbt);
                outcome.trace_Tj_diode.push_back(Tj_diode);
                outcome.trace_P_igbt.push_back(loss.igbt_total());
                outcome.trace_P_diode.push_back(loss.diode_total());
            }
        }
        losses_csv.close();
        tj_csv.close();
        outcome.outputs.push_back((dir.filename() / "losses.csv").string());
        outcome.outputs.push_back((dir.filename() / "tj.csv").string());
        outcome.timings_ms.emplace_back("simulate", ms_since(t_stage));

        stage = "rainflow";
        t_stage = Clock::now();
        CycleTable cycles_igbt = count_cycles(track_igbt.finish(), outcome.name + ":igbt");
        CycleTable cycles_diode = count_cycles(track_diode.finish(), outcome.name + ":diode");
        write_cycles_csv(dir / "cycles_igbt.csv", cycles_igbt);
        write_cycles_csv(dir / "cycles_diode.csv", cycles_diode);
        outcome.outputs.push_back((dir.filename() / "cycles_igbt.csv").string());
        outcome.outputs.push_back((dir.filename() / "cycles_diode.csv").string());
        outcome.timings_ms.emplace_back("rainflow", ms_since(t_stage));

        stage = "damage";
        t_stage = Clock::now();
        double duration = profile.duration() > 0.0 ? profile.duration() : dt;
        json damage_json{{"scenario", outcome.name}, {"profile", profile.name}, {"model", model}};
        for (const auto& [device, table, stats] :
             {std::tuple<const char*, const CycleTable&, const DeviceSeriesStats&>{
                  "igbt", cycles_igbt, stats_igbt},
              {"diode", cycles_diode, stats_diode}}) {
            ScenarioDamage d;
            d.profile = profile.name;
            d.model = model;
            d.device = device;
            d.D_run = accumulate_damage(table, cfg.lifetime);
            d.D_annual = annualize(d.D_run, duration, cfg.annual_driving_hours);
            d.n_cycles = table.cycles.size();
            d.max_dT = table.max_range();
            damage_json[device] = damage_entry(d, stats);
            outcome.damage.push_back(std::move(d));
        }
        std::ofstream(dir / "damage.json") << damage_json.dump(2) << "\n";
        outcome.outputs.push_back((dir.filename() / "damage.json").string());
        outcome.timings_ms.emplace_back("damage", ms_since(t_stage));

        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.error = "[" + stage + "] " + e.what();
        outcome.outputs.clear();
        outcome.damage.clear();
        std::error_code ec;
        fs::remove_all(dir, ec);  // keep the output tree consistent with the manifest
    }
    return outcome;
}

unsigned pick_thread_count(const RunOptions& options, std::size_t n_scenarios) {
    unsigned n = options.threads;
    if (n == 0) {
        if (const char* env = std::getenv("POWERLIFE_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) n = static_cast<unsigned>(v);
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, n_scenarios)));
}

bool scenario_selected(const RunOptions& options, const std::string& profile,
                       const std::string& model) {
    if (options.scenario_filter.empty()) return true;
    for (const auto& f : options.scenario_filter)
        if (f == profile || f == profile + ":" + model) return true;
    return false;
}

}  // namespace

DeviceCharacteristics resolve_device(const DeviceConfig& device) {
    if (device.characteristics) return *device.characteristics;
    return fit_device(load_curve_file(device.vi_igbt_path), load_curve_file(device.vi_diode_path),
                      load_curve_file(device.esw_path), load_curve_file(device.erec_path),
                      device.I_star, device.U_star, device.I_rated);
}

RunManifest run(const RunConfig& config, const RunOptions& options) {
    RunManifest manifest;
    manifest.config_hash = config.config_hash;
    manifest.version = kVersion;
    manifest.out_dir =
        options.out_dir_override.empty() ? config.output.directory : options.out_dir_override;

    fs::path out_dir(manifest.out_dir);
    fs::create_directories(out_dir);

    DeviceCharacteristics dev = resolve_device(config.device);

    // parse each profile once, shared by its scenarios
    struct Job {
        const ProfileConfig* pc;
        std::string model;
    };
    std::vector<Job> jobs;
    for (const auto& pc : config.profiles)
        for (const auto& model : config.models)
            if (scenario_selected(options, pc.name, model)) jobs.push_back({&pc, model});
    if (jobs.empty()) throw std::runtime_error("run: no scenario matches the filter");

    std::vector<MissionProfile> parsed(config.profiles.size());
    std::vector<std::string> parse_errors(config.profiles.size());
    for (std::size_t i = 0; i < config.profiles.size(); ++i) {
        const auto& pc = config.profiles[i];
        try {
            MissionProfile p = parse_profile_file(pc.path, pc.name);
            parsed[i] = pc.torque_scale != 1.0 ? scale_torque(p, pc.torque_scale) : std::move(p);
        } catch (const std::exception& e) {
            parse_errors[i] = e.what();
        }
    }
    auto profile_index = [&](const ProfileConfig* pc) {
        return static_cast<std::size_t>(pc - config.profiles.data());
    };

    std::vector<ScenarioOutcome> outcomes(jobs.size());
    std::atomic<std::size_t> next{0};
    unsigned n_threads = pick_thread_count(options, jobs.size());
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            std::size_t pi = profile_index(job.pc);
            if (!parse_errors[pi].empty()) {
                outcomes[i].name = job.pc->name + ":" + job.model;
                outcomes[i].profile = job.pc->name;
                outcomes[i].model = job.model;
                outcomes[i].error = "[mission] " + parse_errors[pi];
            } else {
                outcomes[i] = run_scenario(config, parsed[pi], job.model, dev, out_dir);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    manifest.scenarios = std::move(outcomes);
    manifest.all_ok = true;
    for (const auto& s : manifest.scenarios) {
        manifest.all_ok = manifest.all_ok && s.ok;
        for (const auto& f : s.outputs) manifest.outputs.push_back(f);
    }

    // cross-model comparison needs both models per profile; emit what pairs up
    bool both_models = false;
    {
        std::vector<ScenarioDamage> reports;
        std::set<std::string> models_ok;
        for (const auto& s : manifest.scenarios)
            if (s.ok)
                for (const auto& d : s.damage) reports.push_back(d);
        for (const auto& s : manifest.scenarios)
            if (s.ok) models_ok.insert(s.model);
        if (models_ok.count("t_o") && models_ok.count("t_sw")) {
            // drop profiles that do not have both models completed
            std::map<std::string, std::set<std::string>> per_profile;
            for (const auto& s : manifest.scenarios)
                if (s.ok) per_profile[s.profile].insert(s.model);
            std::vector<ScenarioDamage> paired;
            for (const auto& r : reports)
                if (per_profile[r.profile].size() == 2) paired.push_back(r);
            if (!paired.empty()) {
                manifest.comparisons = compare(paired, config.comparison_threshold);
                both_models = true;
            }
        }
    }
    if (both_models) {
        json cj{{"threshold", config.comparison_threshold}, {"comparisons", json::array()}};
        for (const auto& c : manifest.comparisons) {
            cj["comparisons"].push_back({{"profile", c.profile},
                                         {"device", c.device},
                                         {"D_run_t_o", c.D_run_t_o},
                                         {"D_run_t_sw", c.D_run_t_sw},
                                         {"D_annual_t_o", c.D_annual_t_o},
                                         {"D_annual_t_sw", c.D_annual_t_sw},
                                         {"ratio", c.ratio},
                                         {"switching_model_required", c.switching_model_required}});
        }
        std::ofstream(out_dir / "comparison.json") << cj.dump(2) << "\n";
        manifest.outputs.push_back("comparison.json");
    }

    if (options.plots) {
        for (auto& f : emit_plots(manifest, manifest.out_dir)) manifest.outputs.push_back(f);
    }

    json mj;
    mj["config_hash"] = manifest.config_hash;
    mj["version"] = manifest.version;
    mj["all_ok"] = manifest.all_ok;
    mj["scenarios"] = json::array();
    for (const auto& s : manifest.scenarios) {
        json sj{{"name", s.name},          {"status", s.ok ? "ok" : "error"},
                {"steps", s.steps},        {"dt_s", s.dt},
                {"overmodulation_count", s.overmodulation_count}};
        if (!s.ok) sj["error"] = s.error;
        json tj = json::object();
        for (const auto& [k, v] : s.timings_ms) tj[k] = v;
        sj["timings_ms"] = tj;
        sj["outputs"] = s.outputs;
        mj["scenarios"].push_back(sj);
    }
    manifest.outputs.push_back("manifest.json");
    mj["outputs"] = manifest.outputs;
    std::ofstream(out_dir / "manifest.json") << mj.dump(2) << "\n";
    return manifest;
}

std::vector<std::string> emit_plots(const RunManifest& manifest, const std::string& out_dir) {
    fs::path plot_dir = fs::path(out_dir) / "plots";
    fs::create_directories(plot_dir);
    std::vector<std::string> written;

    for (const auto& s : manifest.scenarios) {
        if (!s.ok) continue;
        if (s.trace_t.empty()) {
            std::cerr << "emit_plots: no series data for " << s.name << ", skipping\n";
            continue;
        }
        std::string base = sanitize(s.profile) + "_" + sanitize(s.model);
        fs::path tj_path = plot_dir / (base + "_tj.svg");
        svg::write_line_chart(tj_path.string(), "Junction temperature, " + s.name, "time [s]",
                              "Tj [degC]",
                              {{"IGBT", "#1f77b4", s.trace_t, s.trace_Tj_igbt},
                               {"diode", "#d62728", s.trace_t, s.trace_Tj_diode}});
        written.push_back(("plots" / tj_path.filename()).string());

        fs::path loss_path = plot_dir / (base + "_loss.svg");
        svg::write_line_chart(loss_path.string(), "Device power loss, " + s.name, "time [s]",
                              "P [W]",
                              {{"IGBT", "#1f77b4", s.trace_t, s.trace_P_igbt},
                               {"diode", "#d62728", s.trace_t, s.trace_P_diode}});
        written.push_back(("plots" / loss_path.filename()).string());
    }

    std::vector<svg::Bar> bars;
    for (const auto& s : manifest.scenarios)
        for (const auto& d : s.damage) bars.push_back({s.name, d.device, d.D_annual});
    if (!bars.empty()) {
        fs::path bar_path = plot_dir / "damage_bars.svg";
        svg::write_bar_chart(bar_path.string(), "Annual damage per device", "annual damage", bars);
        written.push_back(("plots" / bar_path.filename()).string());
    }
    return written;
}

}  // namespace powerlife
