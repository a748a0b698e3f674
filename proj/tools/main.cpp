/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "soctherm/errors.hpp"
#include "soctherm/simulate.hpp"
#include "soctherm/stability.hpp"

using namespace soctherm;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRunaway = 3;

ScenarioConfig load_with_overrides(const std::string& path, const std::string& seed_override,
                                   const std::string& out_dir_override) {
    ScenarioConfig cfg = load_config_file(path);
    if (!seed_override.empty()) cfg.run.seed = std::stoull(seed_override);
    if (!out_dir_override.empty()) cfg.run.out_dir = out_dir_override;
    cfg.validate();
    return cfg;
}

int cmd_run(const ScenarioConfig& cfg) {
    const std::string report = run_scenario_to_files(cfg);
    const auto records = simulate(cfg);
    const RunSummary summary = summarize(cfg.run.label, records, cfg);
    std::cout << "[run] " << cfg.run.label << ": " << records.size() << " epochs, "
              << summary.ires.size() << " IREs (" << summary.ire_total_duration
              << " epochs restricted), mean power " << summary.mean_power << " W\n";
    std::cout << "[run] report: " << report << "\n";
    return 0;
}

int cmd_compare(const ScenarioConfig& cfg) {
    const std::string report = compare_scenario_to_files(cfg);
    const CompareResult result = compare(cfg);
    std::cout << "[compare] " << cfg.run.label << ": clean IRE duration "
              << result.clean_summary.ire_total_duration << ", infected "
              << result.infected_summary.ire_total_duration << " (ratio "
              << result.ire_duration_ratio << ")\n";
    std::cout << "[compare] full-load shift " << result.full_load_shift << ", stealth deviation "
              << result.stealth.deviation_pct << "%"
              << (result.stealth.flagged ? " [FLAGGED]" : "") << "\n";
    std::cout << "[compare] report: " << report << "\n";
    return 0;
}

int cmd_infer(const ScenarioConfig& cfg, std::size_t core, int trials) {
    const ThresholdEstimate est = run_probe_inference(cfg, core, trials);
    nlohmann::ordered_json j{{"schema", 1},
                             {"th_critical_est", est.th_critical_est},
                             {"th_recovery_est", est.th_recovery_est},
                             {"throttle_fraction", est.throttle_fraction},
                             {"trials", est.trials}};
    const std::string text = j.dump(2) + "\n";
    std::cout << text;

    std::filesystem::create_directories(cfg.run.out_dir);
    const auto path =
        std::filesystem::path(cfg.run.out_dir) / (cfg.run.label + "_thresholds.json");
    std::ofstream out(path, std::ios::binary);
    out << text;
    return 0;
}

int cmd_stability(const ScenarioConfig& cfg) {
    const ThermalNetwork net = cfg.build_network();
    const double range_high = cfg.run.temp_guard;

    nlohmann::ordered_json points_json = nlohmann::ordered_json::array();
    struct OperatingPoint {
        const char* label;
        double frequency;
    };
    StabilityProblem base;
    base.params = cfg.power;
    base.g_eff = net.ambient_conductance();
    base.ambient = net.ambient_temp;
    base.utilization = 1.0;

    for (const OperatingPoint op : {OperatingPoint{"attack_sustained", cfg.dtm.f_max},
                                    OperatingPoint{"throttled", cfg.dtm.f_min}}) {
        StabilityProblem problem = base;
        problem.frequency = op.frequency;
        const auto fps = find_fixed_points(problem, net.ambient_temp, range_high);
        const auto interval = runaway_interval(fps, net.ambient_temp, range_high);

        nlohmann::ordered_json fp_json = nlohmann::ordered_json::array();
        for (const auto& fp : fps) {
            fp_json.push_back({{"temperature_c", fp.temperature},
                               {"power_w", fp.power},
                               {"class", to_string(fp.classification)},
                               {"slope_power", fp.slope_power},
                               {"slope_dissipation", fp.slope_dissipation},
                               {"degenerate", fp.degenerate}});
        }
        nlohmann::ordered_json entry{{"label", op.label},
                                     {"frequency_ghz", op.frequency},
                                     {"utilization", 1.0},
                                     {"fixed_points", std::move(fp_json)}};
        if (interval) {
            entry["runaway"] = {{"lower_c", interval->lower}};
            if (interval->upper)
                entry["runaway"]["upper_c"] = *interval->upper;
            else
                entry["runaway"]["upper_c"] = nullptr;
        } else {
            entry["runaway"] = nullptr;
        }
        points_json.push_back(std::move(entry));
        std::cout << "[stability] " << op.label << " @ " << op.frequency << " GHz: "
                  << fps.size() << " fixed point(s)"
                  << (interval ? ", runaway above " + std::to_string(interval->lower) : "")
                  << "\n";
    }

    nlohmann::ordered_json j{{"schema", 1},
                             {"g_eff", base.g_eff},
                             {"ambient_c", net.ambient_temp},
                             {"operating_points", std::move(points_json)}};

    std::filesystem::create_directories(cfg.run.out_dir);
    const auto json_path =
        std::filesystem::path(cfg.run.out_dir) / (cfg.run.label + "_stability.json");
    std::ofstream out(json_path, std::ios::binary);
    out << j.dump(2) << "\n";

    // Plot-ready samples: generation at both operating points plus the
    // dissipation line.
    const auto csv_path =
        std::filesystem::path(cfg.run.out_dir) / (cfg.run.label + "_stability_curves.csv");
    std::ofstream csv(csv_path, std::ios::binary);
    csv << "temp_c,p_generated_fmax_w,p_generated_fmin_w,p_dissipated_w\n";
    for (double t = net.ambient_temp; t <= range_high + 1e-9; t += 0.5) {
        StabilityProblem hot = base;
        hot.frequency = cfg.dtm.f_max;
        StabilityProblem cold = base;
        cold.frequency = cfg.dtm.f_min;
        csv << t << ',' << (power_balance(hot, t) + base.g_eff * (t - net.ambient_temp)) << ','
            << (power_balance(cold, t) + base.g_eff * (t - net.ambient_temp)) << ','
            << base.g_eff * (t - net.ambient_temp) << "\n";
    }
    std::cout << "[stability] wrote " << json_path.string() << " and " << csv_path.string()
              << "\n";
    return 0;
}

int cmd_gen_trace(const std::string& profile, const std::string& out_path, long epochs,
                  long cores, std::uint64_t seed) {
    ProfileSpec spec =
        is_profile_alias(profile) ? profile_alias(profile) : ProfileSpec{};
    if (!is_profile_alias(profile)) spec.kind = profile_kind_from_string(profile);
    spec.rng_seed = seed;
    const auto trace = generate_trace(spec, static_cast<std::size_t>(epochs),
                                      static_cast<std::size_t>(cores));
    save_trace(trace, out_path);
    std::cout << "[gen-trace] " << profile << " -> " << out_path << " (" << epochs << " x "
              << cores << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-core thermal/DVFS co-simulator with a sensor-interface attack layer"};
    app.require_subcommand(1);

    std::string config_path, seed_override, out_dir_override;
    std::string profile, trace_out;
    long epochs = 2000, cores = 4;
    std::uint64_t gen_seed = 1;
    std::size_t probe_core = 0;
    int trials = 5;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "scenario config file")->required();
        cmd->add_option("--seed", seed_override, "override the master seed");
        cmd->add_option("--out-dir", out_dir_override, "override the output directory");
    };

    auto* run_cmd = app.add_subcommand("run", "simulate one scenario and write trace + report");
    add_common(run_cmd);
    auto* compare_cmd =
        app.add_subcommand("compare", "run the scenario with the attack off and on, diff them");
    add_common(compare_cmd);
    auto* infer_cmd = app.add_subcommand(
        "infer-thresholds", "thread-biasing probe; estimate the DTM policy from outside");
    add_common(infer_cmd);
    infer_cmd->add_option("--core", probe_core, "core to bias");
    infer_cmd->add_option("--trials", trials, "throttle events to average");
    auto* stability_cmd =
        app.add_subcommand("stability", "fixed points and runaway interval analysis");
    add_common(stability_cmd);
    auto* gen_cmd = app.add_subcommand("gen-trace", "write a synthetic activity trace CSV");
    gen_cmd->add_option("profile", profile, "profile kind or benchmark alias")->required();
    gen_cmd->add_option("out", trace_out, "output CSV path")->required();
    gen_cmd->add_option("--epochs", epochs, "trace length");
    gen_cmd->add_option("--cores", cores, "core count");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cmd_gen_trace(profile, trace_out, epochs, cores, gen_seed);

        const ScenarioConfig cfg =
            load_with_overrides(config_path, seed_override, out_dir_override);
        if (run_cmd->parsed()) return cmd_run(cfg);
        if (compare_cmd->parsed()) return cmd_compare(cfg);
        if (infer_cmd->parsed()) return cmd_infer(cfg, probe_core, trials);
        if (stability_cmd->parsed()) return cmd_stability(cfg);
    } catch (const runaway_error& e) {
        std::cerr << "runaway: " << e.what() << "\n";
        return kExitRunaway;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const inference_error& e) {
        std::cerr << "inference failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
