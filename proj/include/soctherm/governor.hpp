/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

namespace soctherm {

// Three-threshold DTM policy with a discrete frequency ladder.
//
// Below th_trigger the governor targets f_max. Between th_trigger and
// th_critical it targets a frequency interpolated down toward f_band_floor.
// At or above th_critical it drops to f_min at once and holds it until the
// reported temperature falls below th_recovery. Outside the critical hold,
// the commanded frequency moves toward its target by at most ramp_step per
// decision.
struct DtmConfig {
    double th_trigger = 77.0;   // degC
    double th_critical = 80.0;  // degC
    double th_recovery = 75.0;  // degC
    double f_min = 1.0;         // GHz
    double f_max = 4.0;         // GHz
    double f_step = 0.1;        // GHz
    double ramp_step = 0.2;     // GHz per decision
    double f_band_floor = 3.0;  // GHz, lowest target inside the trigger band

    void validate() const;  // throws config_error

    int ladder_index(double freq_ghz) const;   // nearest rung
    double ladder_freq(int index) const;       // f_min + index * f_step
    int ladder_size() const;                   // rung count
    bool on_ladder(double freq_ghz, double tol = 1e-9) const;

    bool operator==(const DtmConfig&) const = default;
};

enum class GovernorMode { Normal, Triggered, CriticalThrottle };

struct GovernorState {
    GovernorMode mode = GovernorMode::Normal;
    double commanded_frequency = 4.0;  // GHz, always on the ladder
};

GovernorState make_governor_state(const DtmConfig& cfg);

// Target frequency for a reported temperature inside [th_trigger,
// th_critical), before ramp limiting.
double band_target(const DtmConfig& cfg, double reported_peak_temp);

GovernorState governor_step(const GovernorState& state, double reported_peak_temp,
                            const DtmConfig& cfg);

const char* to_string(GovernorMode mode);

}  // namespace soctherm
