/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <utility>
#include <vector>

namespace soctherm {

enum class LeakageKind { Linear, Exponential };

// Monotone piecewise-linear frequency (GHz) -> voltage (V) map.
class VoltageMap {
  public:
    VoltageMap() = default;
    explicit VoltageMap(std::vector<std::pair<double, double>> points);

    // Throws invalid_input when f lies outside [first, last] frequency.
    double voltage_at(double freq_ghz) const;
    double min_freq() const { return points_.front().first; }
    double max_freq() const { return points_.back().first; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

    bool operator==(const VoltageMap&) const = default;

  private:
    std::vector<std::pair<double, double>> points_;
};

struct PowerParams {
    double effective_capacitance = 0.9;  // P_dyn = c_eff * V^2 * f * u, watts with f in GHz
    VoltageMap voltage_map{{{1.0, 0.80}, {4.0, 1.20}}};
    LeakageKind leakage = LeakageKind::Linear;
    double k_lin = 0.04;    // W/degC, linear model
    double beta = 0.0;      // 1/degC, exponential model
    double p_leak0 = 0.35;  // W at t_ref
    double t_ref = 45.0;    // degC

    // Checks non-negative coefficients, monotone V(f), and P_leak >= 0 over
    // [ambient, 120 degC]. Throws config_error.
    void validate(double ambient_temp) const;

    bool operator==(const PowerParams&) const = default;
};

struct CoreState {
    double temperature = 45.0;  // degC
    double frequency = 4.0;     // GHz
    double utilization = 0.0;   // busy fraction in [0,1]
    double power = 0.0;         // W
};

double leakage_power(const PowerParams& params, double temperature);

// Total power P_dyn + P_leak for one core. Strictly increasing in
// utilization at fixed f and T; non-decreasing in temperature.
double compute_power(const CoreState& core, const PowerParams& params);

}  // namespace soctherm
