/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/power.hpp"

#include <algorithm>
#include <cmath>

#include "soctherm/errors.hpp"

namespace soctherm {

VoltageMap::VoltageMap(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) throw config_error("voltage map needs at least two points");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].first > points_[i - 1].first))
            throw config_error("voltage map frequencies must be strictly increasing");
        if (points_[i].second < points_[i - 1].second)
            throw config_error("voltage map must be non-decreasing in frequency");
    }
}

double VoltageMap::voltage_at(double freq_ghz) const {
    if (points_.empty()) throw config_error("voltage map is empty");
    if (freq_ghz < points_.front().first - 1e-9 || freq_ghz > points_.back().first + 1e-9)
        throw invalid_input("frequency outside the voltage map range");
    freq_ghz = std::clamp(freq_ghz, points_.front().first, points_.back().first);
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (freq_ghz <= points_[i].first) {
            const auto& [f0, v0] = points_[i - 1];
            const auto& [f1, v1] = points_[i];
            const double t = (freq_ghz - f0) / (f1 - f0);
            return v0 + t * (v1 - v0);
        }
    }
    return points_.back().second;
}

void PowerParams::validate(double ambient_temp) const {
    if (!(effective_capacitance >= 0.0)) throw config_error("effective_capacitance must be >= 0");
    if (!(k_lin >= 0.0)) throw config_error("leakage k_lin must be >= 0");
    if (!(beta >= 0.0)) throw config_error("leakage beta must be >= 0");
    if (!(p_leak0 >= 0.0)) throw config_error("leakage p0 must be >= 0");
    if (voltage_map.points().size() < 2) throw config_error("voltage map needs two points");
    if (leakage == LeakageKind::Linear) {
        // Worst case over [ambient, 120] is the ambient end for k_lin >= 0.
        if (p_leak0 + k_lin * (ambient_temp - t_ref) < 0.0)
            throw config_error("linear leakage goes negative at ambient temperature");
    }
}

double leakage_power(const PowerParams& params, double temperature) {
    double leak;
    if (params.leakage == LeakageKind::Linear)
        leak = params.p_leak0 + params.k_lin * (temperature - params.t_ref);
    else
        leak = params.p_leak0 * std::exp(params.beta * (temperature - params.t_ref));
    return std::max(0.0, leak);
}

double compute_power(const CoreState& core, const PowerParams& params) {
    if (!(core.utilization >= 0.0 && core.utilization <= 1.0))
        throw invalid_input("utilization outside [0,1]");
    const double v = params.voltage_map.voltage_at(core.frequency);
    const double p_dyn =
        params.effective_capacitance * v * v * core.frequency * core.utilization;
    return p_dyn + leakage_power(params, core.temperature);
}

}  // namespace soctherm
