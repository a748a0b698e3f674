/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "soctherm/workload.hpp"

namespace soctherm {

struct ProbeObservation {
    long epoch = 0;
    double reported_temp = 0.0;  // degC
    double frequency = 0.0;      // GHz
};

struct ThresholdEstimate {
    double th_critical_est = 0.0;  // degC
    double th_recovery_est = 0.0;  // degC
    double throttle_fraction = 0.0;  // (f_before - f_after) / f_before
    int trials = 0;                  // throttle/recover event pairs used
};

// Raises the target core's activity to max(existing, bias); other cores and
// the input trace are untouched.
WorkloadTrace bias_workload(const WorkloadTrace& trace, std::size_t target_core, double bias);

// Side-channel estimation from (temperature, frequency) observations alone.
// A throttle is a frequency drop of at least two ladder steps between
// consecutive epochs; the next frequency increase marks recovery. Uses up to
// `trials` throttle/recover pairs and averages the temperatures seen at those
// epochs. freq_granularity is the public ladder step, not a policy secret.
// Throws inference_error when no throttle event is present.
ThresholdEstimate infer_thresholds(std::span<const ProbeObservation> observations, int trials,
                                   double freq_granularity = 0.1);

}  // namespace soctherm
