/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/governor.hpp"

#include <algorithm>
#include <cmath>

#include "soctherm/errors.hpp"

namespace soctherm {

namespace {
bool is_step_multiple(double value, double step) {
    const double k = value / step;
    return std::fabs(k - std::round(k)) < 1e-6;
}
}  // namespace

void DtmConfig::validate() const {
    if (!(th_recovery < th_trigger && th_trigger < th_critical))
        throw config_error("thresholds must satisfy th_recovery < th_trigger < th_critical");
    if (!(f_step > 0.0)) throw config_error("f_step must be positive");
    if (!(f_min < f_max)) throw config_error("f_min must be below f_max");
    if (!is_step_multiple(f_max - f_min, f_step))
        throw config_error("f_max - f_min must be an integer multiple of f_step");
    if (!(ramp_step > 0.0) || !is_step_multiple(ramp_step, f_step))
        throw config_error("ramp_step must be a positive multiple of f_step");
    if (f_band_floor < f_min - 1e-9 || f_band_floor > f_max + 1e-9 ||
        !is_step_multiple(f_band_floor - f_min, f_step))
        throw config_error("f_band_floor must be on the ladder inside [f_min, f_max]");
}

int DtmConfig::ladder_index(double freq_ghz) const {
    const int k = static_cast<int>(std::lround((freq_ghz - f_min) / f_step));
    return std::clamp(k, 0, ladder_size() - 1);
}

double DtmConfig::ladder_freq(int index) const { return f_min + index * f_step; }

int DtmConfig::ladder_size() const {
    return static_cast<int>(std::lround((f_max - f_min) / f_step)) + 1;
}

bool DtmConfig::on_ladder(double freq_ghz, double tol) const {
    if (freq_ghz < f_min - tol || freq_ghz > f_max + tol) return false;
    return std::fabs(ladder_freq(ladder_index(freq_ghz)) - freq_ghz) <= tol;
}

GovernorState make_governor_state(const DtmConfig& cfg) {
    return GovernorState{GovernorMode::Normal, cfg.ladder_freq(cfg.ladder_size() - 1)};
}

double band_target(const DtmConfig& cfg, double reported_peak_temp) {
    const double fraction =
        (reported_peak_temp - cfg.th_trigger) / (cfg.th_critical - cfg.th_trigger);
    const double reduction = fraction * (cfg.f_max - cfg.f_band_floor);
    const int reduction_steps = static_cast<int>(std::lround(reduction / cfg.f_step));
    const int target_index = cfg.ladder_index(cfg.f_max) - reduction_steps;
    return cfg.ladder_freq(std::max(target_index, cfg.ladder_index(cfg.f_band_floor)));
}

GovernorState governor_step(const GovernorState& state, double reported_peak_temp,
                            const DtmConfig& cfg) {
    // Critical wins over everything, with no ramp limit on the way down.
    if (reported_peak_temp >= cfg.th_critical)
        return {GovernorMode::CriticalThrottle, cfg.ladder_freq(0)};

    if (state.mode == GovernorMode::CriticalThrottle && reported_peak_temp >= cfg.th_recovery)
        return {GovernorMode::CriticalThrottle, cfg.ladder_freq(0)};

    // Either not throttled, or recovery fired; resume band control.
    const bool triggered = reported_peak_temp >= cfg.th_trigger;
    const double target = triggered ? band_target(cfg, reported_peak_temp) : cfg.f_max;

    const int cur = cfg.ladder_index(state.commanded_frequency);
    const int tgt = cfg.ladder_index(target);
    const int ramp = static_cast<int>(std::lround(cfg.ramp_step / cfg.f_step));
    const int next = cur + std::clamp(tgt - cur, -ramp, ramp);

    return {triggered ? GovernorMode::Triggered : GovernorMode::Normal, cfg.ladder_freq(next)};
}

const char* to_string(GovernorMode mode) {
    switch (mode) {
        case GovernorMode::Normal: return "NORMAL";
        case GovernorMode::Triggered: return "TRIGGERED";
        case GovernorMode::CriticalThrottle: return "CRITICAL_THROTTLE";
    }
    return "?";
}

}  // namespace soctherm
