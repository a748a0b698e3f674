/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/stability.hpp"

#include <algorithm>
#include <cmath>

#include "soctherm/errors.hpp"
#include "soctherm/thermal.hpp"

namespace soctherm {

namespace {
double total_power_at(const StabilityProblem& problem, double temperature) {
    CoreState core{temperature, problem.frequency, problem.utilization, 0.0};
    return compute_power(core, problem.params);
}

double power_slope_at(const StabilityProblem& problem, double temperature) {
    if (problem.params.leakage == LeakageKind::Linear) {
        // Analytic; zero below the clamp point where leakage bottoms out.
        return leakage_power(problem.params, temperature) > 0.0 ? problem.params.k_lin : 0.0;
    }
    const double h = 1e-3;
    return (total_power_at(problem, temperature + h) - total_power_at(problem, temperature - h)) /
           (2.0 * h);
}
}  // namespace

double power_balance(const StabilityProblem& problem, double temperature) {
    return total_power_at(problem, temperature) -
           problem.g_eff * (temperature - problem.ambient);
}

std::vector<FixedPoint> find_fixed_points(const StabilityProblem& problem, double range_low,
                                          double range_high, double grid_step) {
    if (!(problem.g_eff > 0.0)) throw invalid_input("g_eff must be positive");
    if (!(range_low < range_high)) throw invalid_input("empty search range");
    if (!(grid_step > 0.0)) throw invalid_input("grid step must be positive");

    std::vector<FixedPoint> points;
    auto add_root = [&](double lo, double hi) {
        // Bisection to 1e-6 degC.
        double f_lo = power_balance(problem, lo);
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = power_balance(problem, mid);
            if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        FixedPoint fp;
        fp.temperature = 0.5 * (lo + hi);
        fp.power = total_power_at(problem, fp.temperature);
        fp.slope_power = power_slope_at(problem, fp.temperature);
        fp.slope_dissipation = problem.g_eff;
        fp.degenerate = std::fabs(fp.slope_power - fp.slope_dissipation) < 1e-9;
        fp.classification = (!fp.degenerate && fp.slope_power < fp.slope_dissipation)
                                ? FixedPointClass::Stable
                                : FixedPointClass::Unstable;
        points.push_back(fp);
    };

    double prev_t = range_low;
    double prev_h = power_balance(problem, prev_t);
    if (prev_h == 0.0) add_root(prev_t, prev_t + 1e-7);
    for (double t = range_low + grid_step; t < range_high + grid_step * 0.5; t += grid_step) {
        const double clamped = std::min(t, range_high);
        const double h = power_balance(problem, clamped);
        if ((prev_h < 0.0 && h >= 0.0) || (prev_h > 0.0 && h <= 0.0)) add_root(prev_t, clamped);
        prev_t = clamped;
        prev_h = h;
        if (clamped == range_high) break;
    }
    return points;
}

std::optional<RunawayInterval> runaway_interval(const std::vector<FixedPoint>& fixed_points,
                                                double /*range_low*/, double /*range_high*/) {
    const FixedPoint* highest_unstable = nullptr;
    for (const auto& fp : fixed_points) {
        if (fp.classification == FixedPointClass::Unstable &&
            (!highest_unstable || fp.temperature > highest_unstable->temperature))
            highest_unstable = &fp;
    }
    if (!highest_unstable) return std::nullopt;

    RunawayInterval interval;
    interval.lower = highest_unstable->temperature;
    for (const auto& fp : fixed_points) {
        if (fp.classification == FixedPointClass::Stable && fp.temperature > interval.lower) {
            if (!interval.upper || fp.temperature < *interval.upper)
                interval.upper = fp.temperature;
        }
    }
    return interval;
}

double verify_against_simulation(const FixedPoint& fp, const StabilityProblem& problem,
                                 double range_high, double dt, long max_steps) {
    if (fp.classification != FixedPointClass::Stable)
        throw invalid_input("verify_against_simulation expects a stable point");

    // Single-node reduction of the same balance equation.
    ThermalNetwork net;
    net.node_count = 1;
    net.core_count = 1;
    net.conductance = {problem.g_eff};
    net.capacitance = {0.05};
    net.ambient_temp = problem.ambient;
    net.validate();
    if (dt >= net.max_stable_dt()) dt = 0.5 * net.max_stable_dt();

    double worst = 0.0;
    for (double offset : {-1.0, 1.0}) {
        std::vector<double> temp{fp.temperature + offset};
        double prev = temp[0];
        long settled = 0;
        long step = 0;
        for (; step < max_steps; ++step) {
            const std::vector<double> power{total_power_at(problem, temp[0])};
            temp = thermal_step(net, temp, power, dt);
            if (temp[0] > range_high || temp[0] < problem.ambient - 1.0)
                throw runaway_error("trajectory diverged from the fixed point", step);
            settled = std::fabs(temp[0] - prev) < 1e-10 ? settled + 1 : 0;
            prev = temp[0];
            if (settled > 64) break;
        }
        if (step == max_steps)
            throw runaway_error("trajectory failed to settle within the step budget", step);
        worst = std::max(worst, std::fabs(temp[0] - fp.temperature));
    }
    return worst;
}

const char* to_string(FixedPointClass c) {
    return c == FixedPointClass::Stable ? "STABLE" : "UNSTABLE";
}

}  // namespace soctherm
