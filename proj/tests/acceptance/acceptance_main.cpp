/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. argv[1] points at the
// committed fixture config directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "soctherm/simulate.hpp"
#include "soctherm/stability.hpp"

using namespace soctherm;

namespace {

int failures = 0;
std::string configs_dir = "configs";

void criterion(const std::string& id, const std::string& label,
               const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-4s %-4s %-38s %6.2fs  %s\n", id.c_str(), ok ? "PASS" : "FAIL", label.c_str(),
                secs, detail.c_str());
    if (!ok) ++failures;
}

ScenarioConfig fixture(const std::string& name) {
    return load_config_file(configs_dir + "/accept/" + name + ".ini");
}

double mean_full_fraction(std::span<const EpochRecord> trace) {
    const auto buckets = utilization_buckets(trace);
    return aggregate_buckets(buckets).full;
}

std::string strip_sidecar(const std::string& json_text) {
    const auto pos = json_text.find("\"sidecar\"");
    return pos == std::string::npos ? json_text : json_text.substr(0, pos);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// --- criteria -------------------------------------------------------------

bool ac1_attack_contract(std::string& detail) {
    DtmConfig dtm;
    std::mt19937_64 gen(0xAC1);
    std::uniform_real_distribution<double> hot(80.0, 130.0);
    std::uniform_real_distribution<double> band(77.0, 79.999);
    long cases = 0;
    for (int iter = 0; iter < 60'000; ++iter) {
        AttackConfig cfg;
        cfg.enabled = true;
        cfg.distribution =
            iter % 2 == 0 ? DrawDistribution::Uniform : DrawDistribution::TruncatedNormal;
        cfg.rng_seed = gen();

        AttackState s2 = make_attack_state(cfg);
        s2.stage = AttackStage::Stage2;
        s2.credit_balance = 3.0;
        const double real2 = hot(gen);
        const auto r2 = attack_transform(s2, real2, cfg, dtm);
        if (!(r2.reported_peak < dtm.th_critical - 0.1) || !(r2.reported_peak <= real2 - 1.5) ||
            !(r2.state.credit_balance >= 0.0)) {
            detail = "stage-2 bound violated at real=" + std::to_string(real2);
            return false;
        }
        AttackState s1 = make_attack_state(cfg);
        s1.stage = AttackStage::Stage1;
        const double real1 = band(gen);
        const auto r1 = attack_transform(s1, real1, cfg, dtm);
        const double bias = r1.reported_peak - real1;
        if (!(bias >= 0.5 && bias <= 1.0)) {
            detail = "stage-1 bias " + std::to_string(bias) + " outside [0.5,1]";
            return false;
        }
        cases += 2;
    }
    detail = std::to_string(cases) + " randomized stage epochs";
    return true;
}

bool ac2_stage2_hold(std::string& detail) {
    const ScenarioConfig cfg = fixture("x264_hot");
    const auto infected = simulate_with_attack(cfg, true);
    const auto clean = simulate_with_attack(cfg, false);

    long best = 0, run = 0, critical_epochs = 0;
    for (const auto& r : infected) {
        if (r.real_peak() > cfg.dtm.th_critical && std::fabs(r.frequency - cfg.dtm.f_max) < 1e-9)
            best = std::max(best, ++run);
        else
            run = 0;
        if (std::fabs(r.frequency - cfg.dtm.f_min) < 1e-9) ++critical_epochs;
    }
    long hot_epochs = 0, hot_throttled = 0;
    for (const auto& r : clean) {
        if (r.real_peak() > cfg.dtm.th_critical) {
            ++hot_epochs;
            if (std::fabs(r.frequency - cfg.dtm.f_min) < 1e-9) ++hot_throttled;
        }
    }
    detail = "infected: " + std::to_string(best) + " consecutive hot epochs at f_max, " +
             std::to_string(critical_epochs) + " throttled; clean: " +
             std::to_string(hot_throttled) + "/" + std::to_string(hot_epochs) +
             " hot epochs at f_min";
    return best >= 3 && critical_epochs == 0 && hot_epochs > 0 && hot_throttled == hot_epochs;
}

bool ac3_ire_suppression(std::string& detail) {
    const char* profiles[] = {"x264_hot",         "gcc_hot",  "fft_hot", "exchange_hot",
                              "blackscholes_hot", "lbm_cool", "mcf_cool"};
    std::ostringstream out;
    for (const char* name : profiles) {
        const ScenarioConfig cfg = fixture(name);
        const CompareResult result = compare(cfg);
        const long clean_count = static_cast<long>(result.clean_summary.ires.size());
        const long infected_count = static_cast<long>(result.infected_summary.ires.size());
        const long clean_dur = result.clean_summary.ire_total_duration;
        const long infected_dur = result.infected_summary.ire_total_duration;

        if (infected_count > clean_count) {
            detail = std::string(name) + ": infected IRE count exceeds clean";
            return false;
        }
        if (infected_dur > clean_dur) {
            detail = std::string(name) + ": infected IRE duration exceeds clean";
            return false;
        }
        // The headline gate on the compute-intensive fixture.
        if (std::string(name) == "x264_hot") {
            if (clean_dur == 0 || infected_dur * 2 > clean_dur) {
                detail = "x264_hot duration ratio not <= 0.5";
                return false;
            }
            out << "x264_hot " << infected_dur << "/" << clean_dur << " restricted epochs; ";
        }
    }
    detail = out.str() + "7 profiles, direction holds on all";
    return true;
}

bool ac4_stealth(std::string& detail) {
    std::ostringstream out;
    for (const char* name :
         {"stealth_4core", "stealth_16core", "stealth_32core", "stealth_48core"}) {
        const ScenarioConfig cfg = fixture(name);
        const CompareResult result = compare(cfg);
        out << result.stealth.deviation_pct << "% ";
        if (std::fabs(result.stealth.deviation_pct) > 2.0 || result.stealth.flagged) {
            detail = std::string(name) + " deviation " +
                     std::to_string(result.stealth.deviation_pct) + "% exceeds 2%";
            return false;
        }
    }
    detail = "deviations: " + out.str();
    return true;
}

bool ac5_utilization_shift(std::string& detail) {
    const ScenarioConfig cfg = fixture("exchange_hot");
    const auto clean = simulate_with_attack(cfg, false);
    const auto infected = simulate_with_attack(cfg, true);
    const double full_clean = mean_full_fraction(clean);
    const double full_infected = mean_full_fraction(infected);
    const double shift = full_infected - full_clean;
    detail = "full-load fraction " + std::to_string(full_clean) + " -> " +
             std::to_string(full_infected) + " (+" + std::to_string(shift * 100.0) + " pp)";
    return full_infected > full_clean && shift >= 0.15;
}

bool ac6_threshold_inference(std::string& detail) {
    ScenarioConfig cfg = fixture("recon");
    double worst_c = 0.0, worst_r = 0.0, worst_f = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        cfg.run.seed = seed;
        const ThresholdEstimate est = run_probe_inference(cfg, 0, 5);
        worst_c = std::max(worst_c, std::fabs(est.th_critical_est - cfg.dtm.th_critical));
        worst_r = std::max(worst_r, std::fabs(est.th_recovery_est - cfg.dtm.th_recovery));
        worst_f = std::max(worst_f, std::fabs(est.throttle_fraction - 0.75));
    }
    detail = "worst |err|: critical " + std::to_string(worst_c) + ", recovery " +
             std::to_string(worst_r) + ", fraction " + std::to_string(worst_f);
    return worst_c <= 0.5 && worst_r <= 0.5 && worst_f <= 0.05;
}

bool ac7_fixed_point_oracles(std::string& detail) {
    // Closed form vs bisection over a (k_lin, g_eff) grid.
    int grid_cases = 0;
    for (double k = 0.0; k < 0.95; k += 0.09) {
        for (double g : {0.5, 0.8, 1.1, 1.6, 2.2, 2.8}) {
            if (k >= g) continue;
            StabilityProblem problem;
            problem.params.effective_capacitance = 6.0;
            problem.params.voltage_map = VoltageMap({{0.5, 1.0}, {4.0, 1.0}});
            problem.params.k_lin = k;
            problem.params.p_leak0 = 0.0;
            problem.params.t_ref = 45.0;
            problem.frequency = 1.0;
            problem.utilization = 1.0;
            problem.g_eff = g;
            problem.ambient = 45.0;
            const double expected = 45.0 + 6.0 / (g - k);
            if (expected > 148.0) continue;
            const auto points = find_fixed_points(problem, 45.0, 150.0);
            if (points.size() != 1 || std::fabs(points[0].temperature - expected) > 1e-6) {
                detail = "closed form mismatch at k=" + std::to_string(k) +
                         " g=" + std::to_string(g);
                return false;
            }
            if (verify_against_simulation(points[0], problem) > 0.1) {
                detail = "time-domain residual > 0.1 degC at k=" + std::to_string(k);
                return false;
            }
            ++grid_cases;
        }
    }
    if (grid_cases < 50) {
        detail = "grid produced only " + std::to_string(grid_cases) + " cases";
        return false;
    }

    // Exponential two-root case against a 0.01-degC sign scan.
    StabilityProblem problem;
    problem.params.effective_capacitance = 10.0;
    problem.params.voltage_map = VoltageMap({{0.5, 1.0}, {4.0, 1.0}});
    problem.params.leakage = LeakageKind::Exponential;
    problem.params.p_leak0 = 0.5;
    problem.params.beta = 0.08;
    problem.params.t_ref = 45.0;
    problem.frequency = 1.0;
    problem.utilization = 1.0;
    problem.g_eff = 1.0;
    problem.ambient = 45.0;

    const auto points = find_fixed_points(problem, 45.0, 150.0);
    std::vector<double> scan_roots;
    double prev = power_balance(problem, 45.0);
    for (double t = 45.01; t <= 150.0; t += 0.01) {
        const double h = power_balance(problem, t);
        if ((prev < 0.0 && h >= 0.0) || (prev > 0.0 && h <= 0.0)) scan_roots.push_back(t);
        prev = h;
    }
    if (points.size() != 2 || scan_roots.size() != 2 ||
        points[0].classification != FixedPointClass::Stable ||
        points[1].classification != FixedPointClass::Unstable ||
        std::fabs(points[0].temperature - scan_roots[0]) > 0.01 ||
        std::fabs(points[1].temperature - scan_roots[1]) > 0.01) {
        detail = "exponential two-root case disagrees with the scan";
        return false;
    }
    if (verify_against_simulation(points[0], problem) > 0.1) {
        detail = "exponential stable point residual > 0.1";
        return false;
    }
    detail = std::to_string(grid_cases) + " grid cases + two-root scan agree";
    return true;
}

bool ac8_kernel_properties(std::string& detail) {
    std::mt19937_64 gen(0xAC8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Thermal: equilibrium invariance + contraction + power monotonicity.
    for (int iter = 0; iter < 10'000; ++iter) {
        const std::size_t n = 1 + gen() % 5;
        ThermalNetwork net;
        net.node_count = n;
        net.core_count = n;
        net.ambient_temp = 20.0 + 30.0 * unit(gen);
        net.conductance.assign(n * n, 0.0);
        net.capacitance.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            net.capacitance[i] = 0.05 + 2.0 * unit(gen);
            net.conductance[i * n + i] = 0.1 + 2.0 * unit(gen);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double g = 2.0 * unit(gen);
                net.conductance[i * n + j] -= g;
                net.conductance[j * n + i] -= g;
                net.conductance[i * n + i] += g;
                net.conductance[j * n + j] += g;
            }
        net.validate();
        const double dt = 0.9 * net.max_stable_dt();

        std::vector<double> temps(n), powers(n, 0.0);
        for (auto& t : temps) t = net.ambient_temp - 30.0 + 90.0 * unit(gen);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                powers[i] += net.g(i, j) * (temps[j] - net.ambient_temp);
        const auto eq = thermal_step(net, temps, powers, dt);
        for (std::size_t i = 0; i < n; ++i)
            if (std::fabs(eq[i] - temps[i]) > 1e-12 * std::max(1.0, std::fabs(temps[i]))) {
                detail = "equilibrium invariance violated";
                return false;
            }

        double before = 0.0, after = 0.0;
        const auto cooled = thermal_step(net, temps, std::vector<double>(n, 0.0), dt);
        for (std::size_t i = 0; i < n; ++i) {
            before = std::max(before, std::fabs(temps[i] - net.ambient_temp));
            after = std::max(after, std::fabs(cooled[i] - net.ambient_temp));
        }
        if (after > before + 1e-12) {
            detail = "ambient contraction violated";
            return false;
        }

        std::vector<double> loads(n);
        for (auto& p : loads) p = 10.0 * unit(gen);
        const auto base = thermal_step(net, temps, loads, dt);
        loads[gen() % n] += 0.01 + 5.0 * unit(gen);
        const auto hot = thermal_step(net, temps, loads, dt);
        for (std::size_t i = 0; i < n; ++i)
            if (hot[i] < base[i] - 1e-12) {
                detail = "power monotonicity violated";
                return false;
            }
    }

    // compute_power monotone in utilization and temperature.
    for (int iter = 0; iter < 10'000; ++iter) {
        PowerParams params;
        params.effective_capacitance = 0.5 + 2.0 * unit(gen);
        params.k_lin = 0.2 * unit(gen) + 1e-6;
        params.p_leak0 = unit(gen);
        const double f = 1.0 + 3.0 * unit(gen);
        double u1 = unit(gen), u2 = unit(gen);
        if (u1 > u2) std::swap(u1, u2);
        double t1 = 45.0 + 60.0 * unit(gen), t2 = 45.0 + 60.0 * unit(gen);
        if (t1 > t2) std::swap(t1, t2);
        if (compute_power({t1, f, u2, 0}, params) < compute_power({t1, f, u1, 0}, params) ||
            compute_power({t2, f, u1, 0}, params) < compute_power({t1, f, u1, 0}, params) - 1e-12) {
            detail = "compute_power monotonicity violated";
            return false;
        }
    }

    // Governor: safety, hysteresis, ladder closure.
    for (int iter = 0; iter < 10'000; ++iter) {
        DtmConfig cfg;
        cfg.th_critical = 70.0 + 20.0 * unit(gen);
        cfg.th_trigger = cfg.th_critical - 1.0 - 4.0 * unit(gen);
        cfg.th_recovery = cfg.th_trigger - 0.5 - 4.0 * unit(gen);
        cfg.ramp_step = 0.1 * (1 + gen() % 5);
        cfg.f_band_floor = 1.0 + 0.1 * (gen() % 31);
        cfg.validate();
        GovernorState state = make_governor_state(cfg);
        bool throttled = false;
        for (int step = 0; step < 30; ++step) {
            const double reported = cfg.th_recovery - 8.0 + 20.0 * unit(gen);
            state = governor_step(state, reported, cfg);
            if (reported >= cfg.th_critical &&
                std::fabs(state.commanded_frequency - cfg.f_min) > 1e-9) {
                detail = "governor safety violated";
                return false;
            }
            if (reported >= cfg.th_critical) throttled = true;
            if (throttled && reported >= cfg.th_recovery &&
                std::fabs(state.commanded_frequency - cfg.f_min) > 1e-9) {
                detail = "governor hysteresis violated";
                return false;
            }
            if (reported < cfg.th_recovery) throttled = false;
            if (!cfg.on_ladder(state.commanded_frequency)) {
                detail = "ladder closure violated";
                return false;
            }
        }
    }
    detail = "thermal/power/governor suites, 3x10k cases";
    return true;
}

bool ac9_replay_determinism(std::string& detail) {
    ScenarioConfig cfg = fixture("gcc_hot");
    const auto dir = std::filesystem::temp_directory_path() / "soctherm_replay";
    cfg.run.out_dir = dir.string();

    std::vector<std::string> traces, reports, compare_reports;
    for (int pass = 0; pass < 2; ++pass) {
        std::filesystem::remove_all(dir);
        run_scenario_to_files(cfg);
        compare_scenario_to_files(cfg);
        traces.push_back(slurp(dir / (cfg.run.label + "_trace.csv")) +
                         slurp(dir / (cfg.run.label + "_clean_trace.csv")) +
                         slurp(dir / (cfg.run.label + "_infected_trace.csv")));
        reports.push_back(strip_sidecar(slurp(dir / (cfg.run.label + "_report.json"))));
        compare_reports.push_back(strip_sidecar(slurp(dir / (cfg.run.label + "_compare.json"))));
    }
    std::filesystem::remove_all(dir);

    if (traces[0] != traces[1] || traces[0].empty()) {
        detail = "trace CSVs differ between runs";
        return false;
    }
    if (reports[0] != reports[1] || compare_reports[0] != compare_reports[1]) {
        detail = "report JSONs differ between runs";
        return false;
    }
    detail = "byte-identical trace CSVs and reports (sidecar excluded)";
    return true;
}

bool ac10_round_trip(std::string& detail) {
    std::mt19937_64 gen(0xAC10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 100; ++iter) {
        WorkloadTrace trace;
        trace.epoch_count = 1 + gen() % 50;
        trace.core_count = 1 + gen() % 8;
        trace.activity.resize(trace.epoch_count * trace.core_count);
        for (auto& a : trace.activity) a = unit(gen);
        std::ostringstream out;
        save_trace(trace, out);
        std::istringstream in(out.str());
        if (load_trace(in).activity != trace.activity) {
            detail = "workload trace round-trip lost bits";
            return false;
        }

        ScenarioConfig cfg = default_config();
        cfg.run.seed = gen();
        cfg.run.total_epochs = 1 + static_cast<long>(gen() % 10'000);
        cfg.run.label = "rt" + std::to_string(iter);
        cfg.power.effective_capacitance = 4.0 * unit(gen);
        cfg.power.k_lin = 0.2 * unit(gen);
        cfg.power.p_leak0 = unit(gen);
        cfg.dtm.th_trigger = 76.0 + unit(gen);
        cfg.attack.stage1_offset_low = 0.1 + 0.4 * unit(gen);
        cfg.attack.stage1_offset_high = cfg.attack.stage1_offset_low + unit(gen);
        cfg.attack.stage2_delta_low = cfg.attack.stage1_offset_high + unit(gen);
        cfg.attack.stage2_delta_high = cfg.attack.stage2_delta_low + unit(gen);
        cfg.metrics.stealth_threshold_pct = 0.5 + 3.0 * unit(gen);
        if (load_config_string(save_config(cfg)) != cfg) {
            detail = "config echo round-trip mismatch";
            return false;
        }
    }
    detail = "100 randomized traces and config echoes";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) configs_dir = argv[1];
    std::printf("acceptance suite (fixtures: %s)\n", configs_dir.c_str());

    criterion("AC1", "attack report contract", ac1_attack_contract);
    criterion("AC2", "stage-2 hold at f_max past critical", ac2_stage2_hold);
    criterion("AC3", "IRE suppression across profiles", ac3_ire_suppression);
    criterion("AC4", "average-temperature stealthiness", ac4_stealth);
    criterion("AC5", "full-load utilization shift", ac5_utilization_shift);
    criterion("AC6", "threshold inference from probing", ac6_threshold_inference);
    criterion("AC7", "fixed-point oracle equivalence", ac7_fixed_point_oracles);
    criterion("AC8", "thermal/power/governor properties", ac8_kernel_properties);
    criterion("AC9", "replay determinism", ac9_replay_determinism);
    criterion("AC10", "round-trip I/O", ac10_round_trip);

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
