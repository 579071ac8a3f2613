// powerlife CLI: mission-profile loss, junction-temperature, and lifetime
// simulation for inverter power devices.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "powerlife/config.hpp"
#include "powerlife/mission.hpp"
#include "powerlife/pipeline.hpp"

using namespace powerlife;

namespace {

int cmd_run(const std::string& config_path, const RunOptions& options) {
    RunConfig cfg = load_config(config_path);
    RunManifest manifest = run(cfg, options);

    for (const auto& s : manifest.scenarios) {
        if (s.ok) {
            std::printf("%-16s ok     steps=%-9zu overmodulation=%zu\n", s.name.c_str(), s.steps,
                        s.overmodulation_count);
            for (const auto& d : s.damage)
                std::printf("    %-5s D_run=%.6e D_annual=%.6e cycles=%zu max_dTj=%.2f K\n",
                            d.device.c_str(), d.D_run, d.D_annual, d.n_cycles, d.max_dT);
        } else {
            std::printf("%-16s FAILED %s\n", s.name.c_str(), s.error.c_str());
        }
    }
    for (const auto& c : manifest.comparisons) {
        std::printf("%s %-5s D(t_sw)/D(t_o)=%.3f%s\n", c.profile.c_str(), c.device.c_str(),
                    c.ratio, c.switching_model_required ? "  -> switching-period model required" : "");
    }
    std::printf("outputs under %s (see manifest.json)\n", manifest.out_dir.c_str());
    return manifest.all_ok ? 0 : 2;
}

int cmd_fit_device(const std::string& vi_igbt, const std::string& vi_diode,
                   const std::string& esw, const std::string& erec, double i_star, double u_star,
                   double i_rated) {
    DeviceCharacteristics dev =
        fit_device(load_curve_file(vi_igbt), load_curve_file(vi_diode), load_curve_file(esw),
                   load_curve_file(erec), i_star, u_star, i_rated);
    nlohmann::json j{{"U_CE", dev.U_CE},         {"r_CE", dev.r_CE},
                     {"U_F", dev.U_F},           {"r_F", dev.r_F},
                     {"E_on_ref", dev.E_on_ref}, {"E_off_ref", dev.E_off_ref},
                     {"E_rec_ref", dev.E_rec_ref}, {"I_star", dev.I_star},
                     {"U_star", dev.U_star},     {"I_rated", dev.I_rated}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_classify(const std::string& profile_path, double speed_split, double torque_split) {
    MissionProfile profile = parse_profile_file(profile_path);
    SituationThresholds thresholds = default_thresholds(profile);
    if (speed_split > 0.0) thresholds.speed_split = speed_split;
    if (torque_split > 0.0) thresholds.torque_split = torque_split;

    SituationShares shares = situation_shares(profile, thresholds);
    std::printf("profile: %s (%zu samples, %.1f s)\n", profile.name.c_str(), profile.size(),
                profile.duration());
    std::printf("splits:  speed %.3f rpm, |torque| %.4f N·m\n", thresholds.speed_split,
                thresholds.torque_split);
    for (SituationClass c : {SituationClass::LowSpeedHighTorque, SituationClass::LowSpeedLowTorque,
                             SituationClass::HighSpeedLowTorque,
                             SituationClass::HighSpeedHighTorque})
        std::printf("  %-24s %6.2f %%\n", to_string(c), 100.0 * shares.of(c));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mission-profile loss, thermal, and lifetime simulation for "
                 "inverter power devices"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run the configured scenarios");
    std::string config_path;
    RunOptions options;
    run_cmd->add_option("--config", config_path, "Run configuration (JSON)")->required();
    run_cmd->add_option("--scenario", options.scenario_filter,
                        "Only run matching scenarios (<profile> or <profile>:<model>)");
    run_cmd->add_option("--out", options.out_dir_override, "Override the output directory");
    run_cmd->add_flag("--plots", options.plots, "Emit SVG plots");
    run_cmd->add_option("--threads", options.threads,
                        "Worker threads (default: POWERLIFE_THREADS or hardware)");

    auto* fit_cmd = app.add_subcommand("fit-device", "Fit device characteristics from curve CSVs");
    std::string vi_igbt, vi_diode, esw, erec;
    double i_star = 25.0, u_star = 600.0, i_rated = 25.0;
    fit_cmd->add_option("--vi-igbt", vi_igbt, "IGBT V-I curve CSV")->required();
    fit_cmd->add_option("--vi-diode", vi_diode, "diode V-I curve CSV")->required();
    fit_cmd->add_option("--esw", esw, "IGBT switching energy curve CSV (E_on + E_off)")->required();
    fit_cmd->add_option("--erec", erec, "diode recovery energy curve CSV")->required();
    fit_cmd->add_option("--i-star", i_star, "datasheet test current, A");
    fit_cmd->add_option("--u-star", u_star, "datasheet test voltage, V");
    fit_cmd->add_option("--i-rated", i_rated, "rated device current, A");

    auto* classify_cmd = app.add_subcommand("classify", "Speed/torque situation shares of a profile");
    std::string profile_path;
    double speed_split = 0.0, torque_split = 0.0;
    classify_cmd->add_option("--profile", profile_path, "profile CSV")->required();
    classify_cmd->add_option("--speed-split", speed_split,
                             "speed split, rpm (default: midpoint of the profile range)");
    classify_cmd->add_option("--torque-split", torque_split,
                             "|torque| split, N·m (default: midpoint of the profile range)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, options);
        if (fit_cmd->parsed())
            return cmd_fit_device(vi_igbt, vi_diode, esw, erec, i_star, u_star, i_rated);
        if (classify_cmd->parsed()) return cmd_classify(profile_path, speed_split, torque_split);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
