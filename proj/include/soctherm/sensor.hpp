/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <vector>

namespace soctherm {

// One epoch's sensed per-core temperatures, quantized to the sensor LSB.
struct SensorReading {
    long epoch_index = 0;
    std::vector<double> per_core_temps;  // degC, multiples of `quantization`
    double quantization = 0.05;          // degC
};

double quantize_temp(double temp, double quantization);

SensorReading make_reading(long epoch_index, std::span<const double> raw_temps,
                           double quantization);

// Maximum over the per-core temperatures. Throws invalid_input when empty.
double peak_identify(const SensorReading& reading);

}  // namespace soctherm
