/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace soctherm {

// Per-epoch, per-core activity in [0,1]: offered load as a fraction of the
// capacity available at f_max.
struct WorkloadTrace {
    std::size_t epoch_count = 0;
    std::size_t core_count = 0;
    std::vector<double> activity;  // row-major epoch x core
    std::string name;

    double at(std::size_t epoch, std::size_t core) const {
        return activity[epoch * core_count + core];
    }
    double& at(std::size_t epoch, std::size_t core) {
        return activity[epoch * core_count + core];
    }
    void validate() const;  // dimensions consistent, values in [0,1]

    bool operator==(const WorkloadTrace&) const = default;
};

enum class ProfileKind { ComputeIntensive, MemoryIntensive, Mixed, Ramp, Constant };

struct ProfileSpec {
    ProfileKind kind = ProfileKind::Constant;
    double base_activity = 0.0;
    double burst_amplitude = 0.0;
    long burst_period = 1;  // epochs; bursts occupy the second half of each period
    double noise_sigma = 0.0;
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws config_error

    bool operator==(const ProfileSpec&) const = default;
};

ProfileKind profile_kind_from_string(const std::string& name);  // throws invalid_input
const char* to_string(ProfileKind kind);

// Benchmark-style alias (x264, gcc, lbm, mcf, fft, exchange, blackscholes)
// -> fixed ProfileSpec. Unknown names throw invalid_input.
ProfileSpec profile_alias(const std::string& name);
bool is_profile_alias(const std::string& name);

WorkloadTrace generate_trace(const ProfileSpec& spec, std::size_t epochs, std::size_t cores);

// CSV with mandatory header `epoch,core_0,...,core_{n-1}`. save/load round-trip
// exactly (shortest round-trip float form). load throws parse_error with the
// offending line number.
void save_trace(const WorkloadTrace& trace, std::ostream& out);
void save_trace(const WorkloadTrace& trace, const std::string& path);
WorkloadTrace load_trace(std::istream& in, const std::string& name = "");
WorkloadTrace load_trace(const std::string& path);

}  // namespace soctherm
