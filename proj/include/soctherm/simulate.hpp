/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soctherm/config.hpp"
#include "soctherm/metrics.hpp"
#include "soctherm/recon.hpp"

namespace soctherm {

// Epoch pipeline, in fixed order: sense (quantize) -> peak -> attack ->
// govern -> per-core power at the commanded frequency -> Euler substeps ->
// record. Power is held constant within an epoch's substeps.
std::vector<EpochRecord> simulate(const ScenarioConfig& config);

// As simulate(), but with the attack forced on/off regardless of the config.
std::vector<EpochRecord> simulate_with_attack(const ScenarioConfig& config, bool attack_enabled);

// As simulate(), but over an explicit workload instead of the configured one.
std::vector<EpochRecord> simulate_with_workload(const ScenarioConfig& config,
                                                const WorkloadTrace& workload,
                                                bool attack_enabled);

// Thread-biasing probe: the target core ramps to full load and holds it
// (with light seed-dependent jitter), every other core stays idle.
WorkloadTrace make_probe_workload(std::size_t epochs, std::size_t cores, std::size_t target_core,
                                  std::uint64_t seed, double noise_sigma = 0.02);

// Closed-loop reconnaissance: run the probe with the attack dormant, observe
// (reported temperature, frequency) per epoch, and infer the policy.
ThresholdEstimate run_probe_inference(const ScenarioConfig& config, std::size_t target_core,
                                      int trials);

struct RunSummary {
    std::string label;
    std::vector<IreRecord> ires;
    long ire_total_duration = 0;
    double mean_power = 0.0;
    double max_power = 0.0;
    double energy_j = 0.0;
    std::vector<UtilizationBuckets> util_per_core;
    UtilizationBuckets util_mean;
    double mean_reported_peak = 0.0;
    double max_real_peak = 0.0;
    long epochs_dormant = 0;
    long epochs_stage1 = 0;
    long epochs_stage2 = 0;
    long epochs_throttled = 0;  // commanded frequency == f_min
    double final_credits = 0.0;
};

RunSummary summarize(const std::string& label, std::span<const EpochRecord> trace,
                     const ScenarioConfig& config);

struct CompareResult {
    std::vector<EpochRecord> clean;
    std::vector<EpochRecord> infected;
    RunSummary clean_summary;
    RunSummary infected_summary;
    // Deltas (infected minus clean unless noted).
    long ire_count_delta = 0;
    long ire_duration_delta = 0;
    double ire_count_ratio = 0.0;     // infected/clean; 1 when both zero
    double ire_duration_ratio = 0.0;  // infected/clean; 1 when both zero
    std::vector<double> power_delta_fractions;  // histogram over infected-clean power
    double full_load_shift = 0.0;               // infected full fraction - clean full fraction
    StealthReport stealth;
};

// Runs the scenario twice (attack off, then on) with identical seeds and
// workload, then evaluates every metric.
CompareResult compare(const ScenarioConfig& config);

// Trace CSV schema:
//   epoch,real_t0..real_t{n-1},reported_peak,freq_ghz,power_w,util_0..util_{n-1},stage,credits
void write_epoch_trace(std::span<const EpochRecord> trace, std::ostream& out,
                       long decimation = 1);
std::vector<EpochRecord> read_epoch_trace(std::istream& in);

// Report JSON (schema 1). Timestamps live only under "sidecar"; strip that
// key before hashing. Returns the serialized text.
std::string report_json(const RunSummary& summary, const ScenarioConfig& config);
std::string compare_report_json(const CompareResult& result, const ScenarioConfig& config);

ProbeObservation probe_from_record(const EpochRecord& record);

// Full file-producing entry points used by the CLI: write trace CSV(s) and a
// report JSON under run.out_dir. Returns the report path.
std::string run_scenario_to_files(const ScenarioConfig& config);
std::string compare_scenario_to_files(const ScenarioConfig& config);

}  // namespace soctherm
