/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/sensor.hpp"

#include <algorithm>
#include <cmath>

#include "soctherm/errors.hpp"

namespace soctherm {

double quantize_temp(double temp, double quantization) {
    if (!(quantization > 0.0)) return temp;
    return std::round(temp / quantization) * quantization;
}

SensorReading make_reading(long epoch_index, std::span<const double> raw_temps,
                           double quantization) {
    SensorReading reading;
    reading.epoch_index = epoch_index;
    reading.quantization = quantization;
    reading.per_core_temps.reserve(raw_temps.size());
    for (double t : raw_temps) reading.per_core_temps.push_back(quantize_temp(t, quantization));
    return reading;
}

double peak_identify(const SensorReading& reading) {
    if (reading.per_core_temps.empty())
        throw invalid_input("peak_identify: no core temperatures");
    return *std::max_element(reading.per_core_temps.begin(), reading.per_core_temps.end());
}

}  // namespace soctherm
