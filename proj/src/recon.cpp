/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/recon.hpp"

#include <algorithm>

#include "soctherm/errors.hpp"

namespace soctherm {

WorkloadTrace bias_workload(const WorkloadTrace& trace, std::size_t target_core, double bias) {
    if (target_core >= trace.core_count) throw invalid_input("bias target core out of range");
    if (!(bias >= 0.0 && bias <= 1.0)) throw invalid_input("bias outside [0,1]");

    WorkloadTrace biased = trace;
    for (std::size_t t = 0; t < biased.epoch_count; ++t)
        biased.at(t, target_core) = std::max(biased.at(t, target_core), bias);
    return biased;
}

ThresholdEstimate infer_thresholds(std::span<const ProbeObservation> observations, int trials,
                                   double freq_granularity) {
    if (trials < 1) throw invalid_input("trials must be >= 1");
    if (!(freq_granularity > 0.0)) throw invalid_input("freq_granularity must be positive");

    const double drop_threshold = 2.0 * freq_granularity - 1e-9;

    ThresholdEstimate estimate;
    double critical_sum = 0.0;
    double recovery_sum = 0.0;
    int drops = 0;
    int recoveries = 0;
    bool first_drop_seen = false;

    std::size_t i = 1;
    while (i < observations.size() && drops < trials) {
        const double drop = observations[i - 1].frequency - observations[i].frequency;
        if (drop >= drop_threshold) {
            critical_sum += observations[i].reported_temp;
            ++drops;
            if (!first_drop_seen) {
                first_drop_seen = true;
                estimate.throttle_fraction = drop / observations[i - 1].frequency;
            }
            // Recovery: the next epoch where frequency rises again.
            std::size_t j = i + 1;
            while (j < observations.size() &&
                   observations[j].frequency <= observations[j - 1].frequency + 1e-12)
                ++j;
            if (j < observations.size()) {
                recovery_sum += observations[j].reported_temp;
                ++recoveries;
                i = j + 1;
                continue;
            }
            break;
        }
        ++i;
    }

    if (drops == 0)
        throw inference_error("thresholds-not-observed: no throttle event in the probe series");

    estimate.th_critical_est = critical_sum / drops;
    estimate.th_recovery_est = recoveries > 0 ? recovery_sum / recoveries : 0.0;
    estimate.trials = drops;
    return estimate;
}

}  // namespace soctherm
