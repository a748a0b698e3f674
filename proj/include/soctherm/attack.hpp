/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <utility>

#include "soctherm/governor.hpp"
#include "soctherm/rng.hpp"

namespace soctherm {

enum class DrawDistribution { Uniform, TruncatedNormal };

// Two-stage corruption of the peak temperature delivered to the governor.
//
// Stage 1 (real peak inside the trigger band) inflates the report by a small
// offset and banks the surplus as credits. Stage 2 (real peak at or above
// th_critical) deflates the report and clamps it strictly below th_critical,
// spending credits, so the governor never sees a critical value while the
// die is actually past the limit.
struct AttackConfig {
    bool enabled = false;
    double stage1_offset_low = 0.5;   // degC
    double stage1_offset_high = 1.0;  // degC
    double stage2_delta_low = 1.5;    // degC
    double stage2_delta_high = 2.0;   // degC
    double clamp_margin_low = 0.1;    // degC
    double clamp_margin_high = 0.3;   // degC
    DrawDistribution distribution = DrawDistribution::TruncatedNormal;
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws config_error

    bool operator==(const AttackConfig&) const = default;
};

enum class AttackStage { Dormant, Stage1, Stage2 };

struct AttackState {
    AttackStage stage = AttackStage::Dormant;
    double credit_balance = 0.0;  // degC-epochs of banked positive bias
    Rng rng{1};
};

AttackState make_attack_state(const AttackConfig& cfg);

struct AttackResult {
    double reported_peak = 0.0;
    AttackState state;
};

// Stage machine advances on the real peak before any draw: Dormant enters
// Stage1 at th_trigger (never straight to Stage2), Stage1 enters Stage2 at
// th_critical, Stage2 falls back to Stage1 below th_critical, and anything
// returns to Dormant below th_recovery.
AttackResult attack_transform(const AttackState& state, double real_peak,
                              const AttackConfig& cfg, const DtmConfig& dtm);

const char* to_string(AttackStage stage);
AttackStage attack_stage_from_string(const char* name);  // throws invalid_input

}  // namespace soctherm
