/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <vector>

#include "soctherm/attack.hpp"

namespace soctherm {

// Everything observable about one simulated epoch.
struct EpochRecord {
    long epoch = 0;
    std::vector<double> per_core_real_temp;    // degC, unquantized die temps at sensing
    double reported_peak = 0.0;                // degC, post-attack value fed to the governor
    double frequency = 0.0;                    // GHz, commanded this epoch
    double total_power = 0.0;                  // W, sum over cores
    std::vector<double> per_core_utilization;  // delivered fraction min(a, f/f_max)
    AttackStage attack_stage = AttackStage::Dormant;
    double credit_balance = 0.0;

    double real_peak() const;

    bool operator==(const EpochRecord&) const = default;
};

// Maximal run of epochs with frequency at or below the threshold.
struct IreRecord {
    long start_epoch = 0;
    long duration_epochs = 0;
    double min_frequency = 0.0;  // GHz
};

struct StealthReport {
    double mean_clean = 0.0;     // degC, mean reported peak of the clean trace
    double mean_infected = 0.0;  // degC
    double deviation_pct = 0.0;  // (mean_clean - mean_infected) / mean_clean * 100
    bool flagged = false;
};

std::vector<IreRecord> detect_ires(std::span<const EpochRecord> trace,
                                   double ire_frequency_threshold);

// Bucket fractions for per-epoch power deltas (attacked - clean). Result has
// edges.size() + 1 entries: (-inf, edges[0]), [edges[0], edges[1]), ...,
// [edges.back(), +inf). Fractions sum to 1.
std::vector<double> power_delta_histogram(std::span<const EpochRecord> trace_attacked,
                                          std::span<const EpochRecord> trace_clean,
                                          std::span<const double> bucket_edges);

struct UtilizationBuckets {
    double low = 0.0;       // utilization < 0.3
    double balanced = 0.0;  // 0.3 <= utilization <= 0.7
    double full = 0.0;      // utilization > 0.7
};

// Per-core epoch fractions in the three load bands; each sums to 1.
std::vector<UtilizationBuckets> utilization_buckets(std::span<const EpochRecord> trace);
UtilizationBuckets aggregate_buckets(std::span<const UtilizationBuckets> per_core);

StealthReport stealth_detect(std::span<const EpochRecord> clean_trace,
                             std::span<const EpochRecord> infected_trace,
                             double detector_threshold_pct);

}  // namespace soctherm
