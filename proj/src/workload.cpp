/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/workload.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "soctherm/errors.hpp"
#include "soctherm/rng.hpp"
#include "text_util.hpp"

namespace soctherm {

void WorkloadTrace::validate() const {
    if (activity.size() != epoch_count * core_count)
        throw config_error("workload trace dimensions inconsistent");
    for (double a : activity)
        if (!(a >= 0.0 && a <= 1.0)) throw config_error("workload activity outside [0,1]");
}

void ProfileSpec::validate() const {
    if (!(base_activity >= 0.0 && base_activity <= 1.0))
        throw config_error("base_activity outside [0,1]");
    if (!(burst_amplitude >= 0.0 && burst_amplitude <= 1.0))
        throw config_error("burst_amplitude outside [0,1]");
    if (base_activity + burst_amplitude > 1.0 + 1e-12)
        throw config_error("base_activity + burst_amplitude exceeds 1");
    if (burst_period < 1) throw config_error("burst_period must be >= 1");
    if (!(noise_sigma >= 0.0)) throw config_error("noise_sigma must be >= 0");
}

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "compute_intensive") return ProfileKind::ComputeIntensive;
    if (name == "memory_intensive") return ProfileKind::MemoryIntensive;
    if (name == "mixed") return ProfileKind::Mixed;
    if (name == "ramp") return ProfileKind::Ramp;
    if (name == "constant") return ProfileKind::Constant;
    throw invalid_input("unknown profile kind: " + name);
}

const char* to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::ComputeIntensive: return "compute_intensive";
        case ProfileKind::MemoryIntensive: return "memory_intensive";
        case ProfileKind::Mixed: return "mixed";
        case ProfileKind::Ramp: return "ramp";
        case ProfileKind::Constant: return "constant";
    }
    return "?";
}

ProfileSpec profile_alias(const std::string& name) {
    ProfileSpec spec;
    if (name == "x264" || name == "gcc") {
        spec.kind = ProfileKind::ComputeIntensive;
        spec.base_activity = 0.9;
        spec.burst_amplitude = 0.1;
        spec.burst_period = 200;
        spec.noise_sigma = 0.02;
    } else if (name == "lbm" || name == "mcf") {
        spec.kind = ProfileKind::MemoryIntensive;
        spec.base_activity = 0.4;
        spec.burst_amplitude = 0.15;
        spec.burst_period = 120;
        spec.noise_sigma = 0.03;
    } else if (name == "fft" || name == "blackscholes") {
        spec.kind = ProfileKind::ComputeIntensive;
        spec.base_activity = 0.55;
        spec.burst_amplitude = 0.45;
        spec.burst_period = 160;
        spec.noise_sigma = 0.02;
    } else if (name == "exchange") {
        spec.kind = ProfileKind::Mixed;
        spec.base_activity = 0.5;
        spec.burst_amplitude = 0.4;
        spec.burst_period = 240;
        spec.noise_sigma = 0.02;
    } else {
        throw invalid_input("unknown workload alias: " + name);
    }
    return spec;
}

bool is_profile_alias(const std::string& name) {
    static const char* aliases[] = {"x264", "gcc", "lbm", "mcf", "fft", "blackscholes", "exchange"};
    return std::any_of(std::begin(aliases), std::end(aliases),
                       [&](const char* a) { return name == a; });
}

namespace {
double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

bool burst_on(long epoch, long period) {
    // Bursts occupy the second half of each period.
    const long phase = epoch % period;
    return 2 * phase >= period;
}

// Gaussian noise from the shared generator; one draw per cell keeps streams
// aligned across kinds.
double noise(Rng& rng, double sigma) {
    if (sigma <= 0.0) {
        rng.next_u64();
        return 0.0;
    }
    return sigma * (rng.truncated_normal(-4.0, 4.0));
}

double cell_activity(ProfileKind kind, const ProfileSpec& spec, long epoch, long epochs,
                     std::size_t core, Rng& rng) {
    const double n = noise(rng, spec.noise_sigma);
    switch (kind) {
        case ProfileKind::Constant:
            return clamp01(spec.base_activity + n);
        case ProfileKind::Ramp:
            return clamp01((epochs > 1 ? static_cast<double>(epoch) / (epochs - 1) : 0.0) + n);
        case ProfileKind::ComputeIntensive: {
            const double burst = burst_on(epoch, spec.burst_period) ? spec.burst_amplitude : 0.0;
            return clamp01(spec.base_activity + burst + n);
        }
        case ProfileKind::MemoryIntensive: {
            // Sustained moderate activity punctuated by stall gaps.
            const long phase = epoch % spec.burst_period;
            const bool stall = 5 * phase >= 4 * spec.burst_period;  // last fifth of each period
            const double burst = burst_on(epoch, spec.burst_period) ? spec.burst_amplitude : 0.0;
            const double level = stall ? 0.25 * spec.base_activity : spec.base_activity + burst;
            return clamp01(level + n);
        }
        case ProfileKind::Mixed:
            // Alternate flavors per core.
            return cell_activity(core % 2 == 0 ? ProfileKind::ComputeIntensive
                                               : ProfileKind::MemoryIntensive,
                                 spec, epoch, epochs, 0, rng);
    }
    return 0.0;
}
}  // namespace

WorkloadTrace generate_trace(const ProfileSpec& spec, std::size_t epochs, std::size_t cores) {
    if (epochs < 1 || cores < 1) throw config_error("trace needs at least one epoch and core");
    spec.validate();

    WorkloadTrace trace;
    trace.epoch_count = epochs;
    trace.core_count = cores;
    trace.name = to_string(spec.kind);
    trace.activity.resize(epochs * cores);

    Rng rng(spec.rng_seed);
    for (std::size_t t = 0; t < epochs; ++t)
        for (std::size_t c = 0; c < cores; ++c)
            trace.at(t, c) = cell_activity(spec.kind, spec, static_cast<long>(t),
                                           static_cast<long>(epochs), c, rng);
    trace.validate();
    return trace;
}

void save_trace(const WorkloadTrace& trace, std::ostream& out) {
    out << "epoch";
    for (std::size_t c = 0; c < trace.core_count; ++c) out << ",core_" << c;
    out << "\n";
    for (std::size_t t = 0; t < trace.epoch_count; ++t) {
        out << t;
        for (std::size_t c = 0; c < trace.core_count; ++c)
            out << ',' << detail::format_double(trace.at(t, c));
        out << "\n";
    }
}

void save_trace(const WorkloadTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open trace file for writing: " + path);
    save_trace(trace, out);
}

namespace {
std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}
}  // namespace

WorkloadTrace load_trace(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw parse_error("no header", 0);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line, ',');
    if (header.empty() || detail::trim(header[0]) != "epoch")
        throw parse_error("header must start with 'epoch'", line_no);
    const std::size_t cores = header.size() - 1;
    if (cores == 0) throw parse_error("header has no core columns", line_no);
    for (std::size_t c = 0; c < cores; ++c) {
        const std::string expected = "core_" + std::to_string(c);
        if (detail::trim(header[c + 1]) != expected)
            throw parse_error("expected column '" + expected + "'", line_no);
    }

    WorkloadTrace trace;
    trace.core_count = cores;
    trace.name = name;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != cores + 1)
            throw parse_error("expected " + std::to_string(cores + 1) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        const long epoch = detail::parse_long(detail::trim(fields[0]), line_no);
        if (epoch != static_cast<long>(trace.epoch_count))
            throw parse_error("epochs must be contiguous from 0", line_no);
        for (std::size_t c = 0; c < cores; ++c) {
            const double a = detail::parse_double(detail::trim(fields[c + 1]), line_no);
            if (!(a >= 0.0 && a <= 1.0))
                throw parse_error("activity outside [0,1]", line_no);
            trace.activity.push_back(a);
        }
        ++trace.epoch_count;
    }
    if (trace.epoch_count == 0) throw parse_error("trace has no data rows", line_no);
    return trace;
}

WorkloadTrace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open trace file: " + path);
    return load_trace(in, path);
}

}  // namespace soctherm
