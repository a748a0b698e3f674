/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "soctherm/errors.hpp"
#include "soctherm/sensor.hpp"
#include "text_util.hpp"

namespace soctherm {

namespace {
using ordered_json = nlohmann::ordered_json;

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}
}  // namespace

std::vector<EpochRecord> simulate_with_workload(const ScenarioConfig& config,
                                                const WorkloadTrace& workload,
                                                bool attack_enabled) {
    config.validate();

    const ThermalNetwork net = config.build_network();
    if (workload.core_count != net.core_count)
        throw config_error("workload core count does not match the thermal network");
    if (static_cast<long>(workload.epoch_count) < config.run.total_epochs)
        throw config_error("workload shorter than run.epochs");

    AttackConfig attack_cfg = config.attack;
    attack_cfg.enabled = attack_enabled;
    attack_cfg.rng_seed = config.run.seed;  // attack stream = master seed

    const DtmConfig& dtm = config.dtm;
    const long substeps =
        static_cast<long>(std::lround(config.run.epoch_duration / config.run.thermal_dt));

    std::vector<double> temps(net.node_count, net.ambient_temp);
    GovernorState governor = make_governor_state(dtm);
    AttackState attacker = make_attack_state(attack_cfg);

    std::vector<EpochRecord> records;
    records.reserve(static_cast<std::size_t>(config.run.total_epochs));

    std::vector<double> powers(net.core_count);
    for (long epoch = 0; epoch < config.run.total_epochs; ++epoch) {
        // Sense -> peak -> attack -> govern.
        const auto core_temps = std::span<const double>(temps).first(net.core_count);
        const SensorReading reading =
            make_reading(epoch, core_temps, config.run.sensor_quantization);
        const double real_peak = peak_identify(reading);

        const AttackResult transformed = attack_transform(attacker, real_peak, attack_cfg, dtm);
        attacker = transformed.state;

        governor = governor_step(governor, transformed.reported_peak, dtm);
        const double freq = governor.commanded_frequency;

        EpochRecord record;
        record.epoch = epoch;
        record.per_core_real_temp.assign(core_temps.begin(), core_temps.end());
        record.reported_peak = transformed.reported_peak;
        record.frequency = freq;
        record.attack_stage = attacker.stage;
        record.credit_balance = attacker.credit_balance;
        record.per_core_utilization.resize(net.core_count);

        // Offered load a is normalized to f_max capacity; the busy fraction
        // saturates when the commanded frequency cannot keep up.
        double total_power = 0.0;
        for (std::size_t c = 0; c < net.core_count; ++c) {
            const double activity = workload.at(static_cast<std::size_t>(epoch), c);
            const double busy = std::min(1.0, activity * dtm.f_max / freq);
            const CoreState core{temps[c], freq, busy, 0.0};
            powers[c] = compute_power(core, config.power);
            total_power += powers[c];
            record.per_core_utilization[c] = busy * freq / dtm.f_max;
        }
        record.total_power = total_power;

        // Power held constant across this epoch's Euler substeps.
        for (long s = 0; s < substeps; ++s) {
            temps = thermal_step(net, temps, powers, config.run.thermal_dt);
            for (double t : temps) {
                if (t > config.run.temp_guard)
                    throw runaway_error("temperature exceeded the " +
                                            detail::format_double(config.run.temp_guard) +
                                            " degC guard",
                                        epoch);
            }
        }

        records.push_back(std::move(record));
    }
    return records;
}

std::vector<EpochRecord> simulate_with_attack(const ScenarioConfig& config, bool attack_enabled) {
    return simulate_with_workload(config, config.build_workload(), attack_enabled);
}

std::vector<EpochRecord> simulate(const ScenarioConfig& config) {
    return simulate_with_attack(config, config.attack.enabled);
}

WorkloadTrace make_probe_workload(std::size_t epochs, std::size_t cores, std::size_t target_core,
                                  std::uint64_t seed, double noise_sigma) {
    if (target_core >= cores) throw invalid_input("probe target core out of range");
    WorkloadTrace trace;
    trace.epoch_count = epochs;
    trace.core_count = cores;
    trace.name = "probe";
    trace.activity.assign(epochs * cores, 0.0);
    // Ramp over the first third, then hold full load so the governor keeps
    // cycling and yields repeated throttle/recover events.
    Rng rng(seed);
    const std::size_t ramp_epochs = std::max<std::size_t>(1, epochs / 3);
    for (std::size_t t = 0; t < epochs; ++t) {
        const double a =
            t < ramp_epochs ? static_cast<double>(t + 1) / static_cast<double>(ramp_epochs) : 1.0;
        const double jitter = noise_sigma > 0.0 ? rng.uniform(-noise_sigma, noise_sigma) : 0.0;
        trace.at(t, target_core) = std::clamp(a + jitter, 0.0, 1.0);
    }
    return trace;
}

ThresholdEstimate run_probe_inference(const ScenarioConfig& config, std::size_t target_core,
                                      int trials) {
    const ThermalNetwork net = config.build_network();
    const WorkloadTrace probe =
        make_probe_workload(static_cast<std::size_t>(config.run.total_epochs), net.core_count,
                            target_core, config.run.seed + 1);
    const auto records = simulate_with_workload(config, probe, false);

    std::vector<ProbeObservation> observations;
    observations.reserve(records.size());
    for (const auto& r : records) observations.push_back(probe_from_record(r));
    return infer_thresholds(observations, trials, config.dtm.f_step);
}

RunSummary summarize(const std::string& label, std::span<const EpochRecord> trace,
                     const ScenarioConfig& config) {
    RunSummary s;
    s.label = label;
    s.ires = detect_ires(trace, config.metrics.ire_threshold);
    for (const auto& ire : s.ires) s.ire_total_duration += ire.duration_epochs;

    double power_sum = 0.0;
    double reported_sum = 0.0;
    for (const auto& r : trace) {
        power_sum += r.total_power;
        s.max_power = std::max(s.max_power, r.total_power);
        reported_sum += r.reported_peak;
        s.max_real_peak = std::max(s.max_real_peak, r.real_peak());
        switch (r.attack_stage) {
            case AttackStage::Dormant: ++s.epochs_dormant; break;
            case AttackStage::Stage1: ++s.epochs_stage1; break;
            case AttackStage::Stage2: ++s.epochs_stage2; break;
        }
        if (std::fabs(r.frequency - config.dtm.f_min) < 1e-9) ++s.epochs_throttled;
    }
    const double n = static_cast<double>(trace.size());
    s.mean_power = power_sum / n;
    s.energy_j = power_sum * config.run.epoch_duration;
    s.mean_reported_peak = reported_sum / n;
    s.util_per_core = utilization_buckets(trace);
    s.util_mean = aggregate_buckets(s.util_per_core);
    s.final_credits = trace.empty() ? 0.0 : trace.back().credit_balance;
    return s;
}

CompareResult compare(const ScenarioConfig& config) {
    CompareResult result;
    result.clean = simulate_with_attack(config, false);
    // Self-comparison when the scenario has the attack disabled.
    result.infected = simulate_with_attack(config, config.attack.enabled);
    result.clean_summary = summarize("clean", result.clean, config);
    result.infected_summary = summarize("infected", result.infected, config);

    const long clean_count = static_cast<long>(result.clean_summary.ires.size());
    const long infected_count = static_cast<long>(result.infected_summary.ires.size());
    result.ire_count_delta = infected_count - clean_count;
    result.ire_duration_delta =
        result.infected_summary.ire_total_duration - result.clean_summary.ire_total_duration;

    auto ratio = [](long infected, long clean) {
        if (clean == 0) return infected == 0 ? 1.0 : std::numeric_limits<double>::infinity();
        return static_cast<double>(infected) / static_cast<double>(clean);
    };
    result.ire_count_ratio = ratio(infected_count, clean_count);
    result.ire_duration_ratio = ratio(result.infected_summary.ire_total_duration,
                                      result.clean_summary.ire_total_duration);

    result.power_delta_fractions =
        power_delta_histogram(result.infected, result.clean, config.metrics.power_bucket_edges);
    result.full_load_shift =
        result.infected_summary.util_mean.full - result.clean_summary.util_mean.full;
    result.stealth =
        stealth_detect(result.clean, result.infected, config.metrics.stealth_threshold_pct);
    return result;
}

void write_epoch_trace(std::span<const EpochRecord> trace, std::ostream& out, long decimation) {
    if (trace.empty()) throw invalid_input("cannot write an empty trace");
    if (decimation < 1) throw invalid_input("decimation must be >= 1");
    const std::size_t cores = trace.front().per_core_real_temp.size();

    out << "epoch";
    for (std::size_t c = 0; c < cores; ++c) out << ",real_t" << c;
    out << ",reported_peak,freq_ghz,power_w";
    for (std::size_t c = 0; c < cores; ++c) out << ",util_" << c;
    out << ",stage,credits\n";

    for (std::size_t i = 0; i < trace.size(); i += static_cast<std::size_t>(decimation)) {
        const auto& r = trace[i];
        out << r.epoch;
        for (double t : r.per_core_real_temp) out << ',' << detail::format_double(t);
        out << ',' << detail::format_double(r.reported_peak);
        out << ',' << detail::format_double(r.frequency);
        out << ',' << detail::format_double(r.total_power);
        for (double u : r.per_core_utilization) out << ',' << detail::format_double(u);
        out << ',' << to_string(r.attack_stage);
        out << ',' << detail::format_double(r.credit_balance) << "\n";
    }
}

namespace {
std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}
}  // namespace

std::vector<EpochRecord> read_epoch_trace(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw parse_error("no header", 0);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_line(line);
    std::size_t cores = 0;
    while (cores + 1 < header.size() &&
           header[cores + 1] == "real_t" + std::to_string(cores))
        ++cores;
    const std::size_t expected = 1 + cores + 3 + cores + 2;
    if (cores == 0 || header.size() != expected)
        throw parse_error("unrecognized trace header", line_no);

    std::vector<EpochRecord> trace;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != expected)
            throw parse_error("field count mismatch", line_no);

        EpochRecord r;
        std::size_t i = 0;
        r.epoch = detail::parse_long(fields[i++], line_no);
        r.per_core_real_temp.resize(cores);
        for (std::size_t c = 0; c < cores; ++c)
            r.per_core_real_temp[c] = detail::parse_double(fields[i++], line_no);
        r.reported_peak = detail::parse_double(fields[i++], line_no);
        r.frequency = detail::parse_double(fields[i++], line_no);
        r.total_power = detail::parse_double(fields[i++], line_no);
        r.per_core_utilization.resize(cores);
        for (std::size_t c = 0; c < cores; ++c)
            r.per_core_utilization[c] = detail::parse_double(fields[i++], line_no);
        r.attack_stage = attack_stage_from_string(std::string(fields[i++]).c_str());
        r.credit_balance = detail::parse_double(fields[i++], line_no);
        trace.push_back(std::move(r));
    }
    if (trace.empty()) throw parse_error("trace has no data rows", line_no);
    return trace;
}

namespace {
ordered_json buckets_json(const UtilizationBuckets& b) {
    return ordered_json{{"low", b.low}, {"balanced", b.balanced}, {"full", b.full}};
}

ordered_json summary_json(const RunSummary& s) {
    ordered_json ires = ordered_json::array();
    for (const auto& ire : s.ires)
        ires.push_back(ordered_json{{"start", ire.start_epoch},
                                    {"duration", ire.duration_epochs},
                                    {"min_freq_ghz", ire.min_frequency}});
    ordered_json per_core = ordered_json::array();
    for (const auto& b : s.util_per_core) per_core.push_back(buckets_json(b));

    return ordered_json{
        {"label", s.label},
        {"ire",
         {{"count", s.ires.size()},
          {"total_duration_epochs", s.ire_total_duration},
          {"intervals", std::move(ires)}}},
        {"power", {{"mean_w", s.mean_power}, {"max_w", s.max_power}, {"energy_j", s.energy_j}}},
        {"utilization", {{"per_core", std::move(per_core)}, {"mean", buckets_json(s.util_mean)}}},
        {"temperature",
         {{"mean_reported_peak_c", s.mean_reported_peak},
          {"max_real_peak_c", s.max_real_peak}}},
        {"attack",
         {{"epochs_dormant", s.epochs_dormant},
          {"epochs_stage1", s.epochs_stage1},
          {"epochs_stage2", s.epochs_stage2},
          {"epochs_throttled", s.epochs_throttled},
          {"final_credits", s.final_credits}}},
    };
}

ordered_json histogram_json(const std::vector<double>& fractions,
                            const std::vector<double>& edges) {
    return ordered_json{{"edges", edges}, {"fractions", fractions}};
}
}  // namespace

std::string report_json(const RunSummary& summary, const ScenarioConfig& config) {
    ordered_json j;
    j["schema"] = 1;
    j["seed"] = config.run.seed;
    j["epochs"] = config.run.total_epochs;
    j.update(summary_json(summary));
    j["config_ini"] = save_config(config);
    j["sidecar"] = {{"wall_clock_utc", utc_now()}};
    return j.dump(2) + "\n";
}

std::string compare_report_json(const CompareResult& result, const ScenarioConfig& config) {
    ordered_json j;
    j["schema"] = 1;
    j["label"] = config.run.label;
    j["seed"] = config.run.seed;
    j["epochs"] = config.run.total_epochs;
    j["clean"] = summary_json(result.clean_summary);
    j["infected"] = summary_json(result.infected_summary);
    j["delta"] = ordered_json{
        {"ire_count_delta", result.ire_count_delta},
        {"ire_duration_delta", result.ire_duration_delta},
        {"ire_count_ratio", result.ire_count_ratio},
        {"ire_duration_ratio", result.ire_duration_ratio},
        {"dtm_degradation_count_pct", (1.0 - result.ire_count_ratio) * 100.0},
        {"dtm_degradation_duration_pct", (1.0 - result.ire_duration_ratio) * 100.0},
        {"power_delta_histogram",
         histogram_json(result.power_delta_fractions, config.metrics.power_bucket_edges)},
        {"full_load_shift", result.full_load_shift},
        {"stealth",
         {{"mean_clean", result.stealth.mean_clean},
          {"mean_infected", result.stealth.mean_infected},
          {"deviation_pct", result.stealth.deviation_pct},
          {"flagged", result.stealth.flagged}}},
    };
    j["config_ini"] = save_config(config);
    j["sidecar"] = {{"wall_clock_utc", utc_now()}};
    return j.dump(2) + "\n";
}

ProbeObservation probe_from_record(const EpochRecord& record) {
    return ProbeObservation{record.epoch, record.reported_peak, record.frequency};
}

namespace {
void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path.string());
    out << content;
}
}  // namespace

std::string run_scenario_to_files(const ScenarioConfig& config) {
    const auto records = simulate(config);
    const RunSummary summary = summarize(config.run.label, records, config);

    const std::filesystem::path dir(config.run.out_dir);
    std::filesystem::create_directories(dir);

    std::ostringstream trace;
    write_epoch_trace(records, trace, config.run.trace_decimation);
    write_file(dir / (config.run.label + "_trace.csv"), trace.str());

    const auto report_path = dir / (config.run.label + "_report.json");
    write_file(report_path, report_json(summary, config));
    return report_path.string();
}

std::string compare_scenario_to_files(const ScenarioConfig& config) {
    const CompareResult result = compare(config);

    const std::filesystem::path dir(config.run.out_dir);
    std::filesystem::create_directories(dir);

    std::ostringstream clean;
    write_epoch_trace(result.clean, clean, config.run.trace_decimation);
    write_file(dir / (config.run.label + "_clean_trace.csv"), clean.str());

    std::ostringstream infected;
    write_epoch_trace(result.infected, infected, config.run.trace_decimation);
    write_file(dir / (config.run.label + "_infected_trace.csv"), infected.str());

    const auto report_path = dir / (config.run.label + "_compare.json");
    write_file(report_path, compare_report_json(result, config));
    return report_path.string();
}

}  // namespace soctherm
