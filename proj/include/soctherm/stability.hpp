/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <optional>
#include <vector>

#include "soctherm/power.hpp"

namespace soctherm {

enum class FixedPointClass { Stable, Unstable };

// Temperature where generated power equals dissipated power for the
// single-node reduction (effective conductance g_eff to ambient).
struct FixedPoint {
    double temperature = 0.0;        // degC
    double power = 0.0;              // W
    FixedPointClass classification = FixedPointClass::Stable;
    double slope_power = 0.0;        // dP/dT at the point, W/degC
    double slope_dissipation = 0.0;  // g_eff, W/degC
    bool degenerate = false;         // slopes equal within 1e-9; classed Unstable
};

struct RunawayInterval {
    double lower = 0.0;  // degC, an unstable fixed-point temperature
    std::optional<double> upper;  // degC; empty = unbounded above
};

struct StabilityProblem {
    PowerParams params;
    double g_eff = 1.0;      // W/degC
    double ambient = 45.0;   // degC
    double frequency = 4.0;  // GHz
    double utilization = 1.0;
};

// Power balance residual h(T) = P_total(T) - g_eff * (T - ambient).
double power_balance(const StabilityProblem& problem, double temperature);

// Roots of h on [range_low, range_high]: sign-change bracketing on a 0.1 degC
// grid, bisection to 1e-6 degC. Slope dP/dT is analytic for linear leakage
// and a central difference (1e-3 degC) for exponential. No sign change is an
// empty list; an invalid range throws invalid_input.
std::vector<FixedPoint> find_fixed_points(const StabilityProblem& problem, double range_low,
                                          double range_high, double grid_step = 0.1);

// The interval above the highest unstable point, capped by the next stable
// point above it if one exists. Empty when every point is stable.
std::optional<RunawayInterval> runaway_interval(const std::vector<FixedPoint>& fixed_points,
                                                double range_low, double range_high);

// Time-domain cross-check: integrate a single-node network with the same
// parameters from fp.temperature +/- 1 degC and return |T_final - fp.T|.
// Throws runaway_error when the trajectory leaves [ambient, range_high]
// or fails to settle within the epoch budget.
double verify_against_simulation(const FixedPoint& fp, const StabilityProblem& problem,
                                 double range_high = 150.0, double dt = 0.001,
                                 long max_steps = 2'000'000);

const char* to_string(FixedPointClass c);

}  // namespace soctherm
