/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "soctherm/attack.hpp"
#include "soctherm/governor.hpp"
#include "soctherm/power.hpp"
#include "soctherm/thermal.hpp"
#include "soctherm/workload.hpp"

namespace soctherm {

enum class WorkloadSource { Profile, File };

struct WorkloadConfig {
    WorkloadSource source = WorkloadSource::Profile;
    std::string profile = "constant";  // alias or kind name
    ProfileSpec spec;
    std::string path;  // when source = File

    bool operator==(const WorkloadConfig&) const = default;
};

struct MetricsConfig {
    double ire_threshold = 1.6;  // GHz
    std::vector<double> power_bucket_edges = {0.0, 2.5, 12.0, 14.0, 17.0};
    double stealth_threshold_pct = 2.0;

    bool operator==(const MetricsConfig&) const = default;
};

struct RunConfig {
    long total_epochs = 2000;
    double epoch_duration = 0.01;  // s, governor decision period
    double thermal_dt = 0.001;     // s, Euler substep
    std::uint64_t seed = 1;        // master; attack uses seed, workload seed+1
    std::string label = "scenario";
    std::string out_dir = "out";
    long trace_decimation = 1;     // write every k-th epoch to the trace CSV
    double sensor_quantization = 0.05;  // degC
    double temp_guard = 150.0;          // degC, runaway abort
};

// Everything needed to reproduce one simulation bit-exactly.
struct ScenarioConfig {
    RunConfig run;
    FloorplanParams floorplan;
    // When non-empty these override the floorplan generator with an explicit
    // network (row-major Laplacian + per-node capacitance).
    std::vector<double> explicit_conductance;
    std::vector<double> explicit_capacitance;
    std::size_t explicit_core_count = 0;
    PowerParams power;
    DtmConfig dtm;
    AttackConfig attack;
    WorkloadConfig workload;
    MetricsConfig metrics;

    ThermalNetwork build_network() const;
    WorkloadTrace build_workload() const;  // resolves profile/alias/file, applies seed
    void validate() const;                 // throws config_error / parse_error

    bool operator==(const ScenarioConfig&) const;
};

ScenarioConfig default_config();

// INI-style text: `[section]` headers and `key = value` pairs, `#`/`;`
// comments. Unknown keys are errors (catches typos in fixtures).
ScenarioConfig load_config(std::istream& in, const std::string& origin = "");
ScenarioConfig load_config_file(const std::string& path);
ScenarioConfig load_config_string(const std::string& text);

// Serializes every field; load(save(c)) == c exactly.
std::string save_config(const ScenarioConfig& cfg);

}  // namespace soctherm
