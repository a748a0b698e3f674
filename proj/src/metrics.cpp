/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/metrics.hpp"

#include <algorithm>

#include "soctherm/errors.hpp"

namespace soctherm {

double EpochRecord::real_peak() const {
    if (per_core_real_temp.empty()) throw invalid_input("epoch record has no core temperatures");
    return *std::max_element(per_core_real_temp.begin(), per_core_real_temp.end());
}

std::vector<IreRecord> detect_ires(std::span<const EpochRecord> trace,
                                   double ire_frequency_threshold) {
    if (trace.empty()) throw invalid_input("detect_ires: empty trace");

    std::vector<IreRecord> ires;
    for (std::size_t i = 0; i < trace.size();) {
        if (trace[i].frequency > ire_frequency_threshold) {
            ++i;
            continue;
        }
        IreRecord ire{trace[i].epoch, 0, trace[i].frequency};
        while (i < trace.size() && trace[i].frequency <= ire_frequency_threshold) {
            ire.min_frequency = std::min(ire.min_frequency, trace[i].frequency);
            ++ire.duration_epochs;
            ++i;
        }
        ires.push_back(ire);
    }
    return ires;
}

std::vector<double> power_delta_histogram(std::span<const EpochRecord> trace_attacked,
                                          std::span<const EpochRecord> trace_clean,
                                          std::span<const double> bucket_edges) {
    if (trace_attacked.size() != trace_clean.size())
        throw invalid_input("power_delta_histogram: trace length mismatch");
    if (trace_attacked.empty()) throw invalid_input("power_delta_histogram: empty traces");
    if (bucket_edges.empty()) throw invalid_input("power_delta_histogram: no bucket edges");
    if (!std::is_sorted(bucket_edges.begin(), bucket_edges.end()))
        throw invalid_input("power_delta_histogram: edges must be sorted");

    std::vector<double> fractions(bucket_edges.size() + 1, 0.0);
    for (std::size_t i = 0; i < trace_attacked.size(); ++i) {
        const double delta = trace_attacked[i].total_power - trace_clean[i].total_power;
        // Buckets are left-closed right-open; upper_bound gives the first
        // edge > delta, which is the bucket index once slot 0 is reserved
        // for the below-range values.
        const auto it = std::upper_bound(bucket_edges.begin(), bucket_edges.end(), delta);
        fractions[static_cast<std::size_t>(it - bucket_edges.begin())] += 1.0;
    }
    for (double& f : fractions) f /= static_cast<double>(trace_attacked.size());
    return fractions;
}

std::vector<UtilizationBuckets> utilization_buckets(std::span<const EpochRecord> trace) {
    if (trace.empty()) throw invalid_input("utilization_buckets: empty trace");
    const std::size_t cores = trace.front().per_core_utilization.size();

    std::vector<UtilizationBuckets> buckets(cores);
    for (const auto& record : trace) {
        if (record.per_core_utilization.size() != cores)
            throw invalid_input("utilization_buckets: inconsistent core counts");
        for (std::size_t c = 0; c < cores; ++c) {
            const double u = record.per_core_utilization[c];
            if (u < 0.3)
                buckets[c].low += 1.0;
            else if (u > 0.7)
                buckets[c].full += 1.0;
            else
                buckets[c].balanced += 1.0;  // 0.3 and 0.7 belong to the middle band
        }
    }
    const double epochs = static_cast<double>(trace.size());
    for (auto& b : buckets) {
        b.low /= epochs;
        b.balanced /= epochs;
        b.full /= epochs;
    }
    return buckets;
}

UtilizationBuckets aggregate_buckets(std::span<const UtilizationBuckets> per_core) {
    UtilizationBuckets mean;
    if (per_core.empty()) return mean;
    for (const auto& b : per_core) {
        mean.low += b.low;
        mean.balanced += b.balanced;
        mean.full += b.full;
    }
    const double n = static_cast<double>(per_core.size());
    mean.low /= n;
    mean.balanced /= n;
    mean.full /= n;
    return mean;
}

StealthReport stealth_detect(std::span<const EpochRecord> clean_trace,
                             std::span<const EpochRecord> infected_trace,
                             double detector_threshold_pct) {
    if (clean_trace.empty() || infected_trace.empty())
        throw invalid_input("stealth_detect: empty trace");

    auto mean_reported = [](std::span<const EpochRecord> trace) {
        double sum = 0.0;
        for (const auto& r : trace) sum += r.reported_peak;
        return sum / static_cast<double>(trace.size());
    };

    StealthReport report;
    report.mean_clean = mean_reported(clean_trace);
    report.mean_infected = mean_reported(infected_trace);
    report.deviation_pct =
        (report.mean_clean - report.mean_infected) / report.mean_clean * 100.0;
    report.flagged = std::abs(report.deviation_pct) > detector_threshold_pct;
    return report;
}

}  // namespace soctherm
