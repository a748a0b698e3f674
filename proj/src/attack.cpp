/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/attack.hpp"

#include <algorithm>
#include <cstring>

#include "soctherm/errors.hpp"

namespace soctherm {

void AttackConfig::validate() const {
    auto check_range = [](const char* name, double low, double high) {
        if (!(0.0 < low && low <= high))
            throw config_error(std::string(name) + " range must satisfy 0 < low <= high");
    };
    check_range("stage1_offset", stage1_offset_low, stage1_offset_high);
    check_range("stage2_delta", stage2_delta_low, stage2_delta_high);
    check_range("clamp_margin", clamp_margin_low, clamp_margin_high);
    // Per-epoch spend must be able to cover per-epoch banking.
    if (stage2_delta_low < stage1_offset_high)
        throw config_error("stage2_delta low must be >= stage1_offset high");
}

AttackState make_attack_state(const AttackConfig& cfg) {
    return AttackState{AttackStage::Dormant, 0.0, Rng(cfg.rng_seed)};
}

namespace {
double draw(Rng& rng, DrawDistribution dist, double low, double high) {
    return dist == DrawDistribution::Uniform ? rng.uniform(low, high)
                                             : rng.truncated_normal(low, high);
}

AttackStage advance_stage(AttackStage stage, double real_peak, const DtmConfig& dtm) {
    switch (stage) {
        case AttackStage::Dormant:
            // One level per epoch from the bottom; never straight to Stage2.
            return real_peak >= dtm.th_trigger ? AttackStage::Stage1 : AttackStage::Dormant;
        case AttackStage::Stage1:
            if (real_peak >= dtm.th_critical) return AttackStage::Stage2;
            if (real_peak < dtm.th_recovery) return AttackStage::Dormant;
            return AttackStage::Stage1;
        case AttackStage::Stage2:
            if (real_peak < dtm.th_recovery) return AttackStage::Dormant;
            if (real_peak < dtm.th_critical) return AttackStage::Stage1;
            return AttackStage::Stage2;
    }
    return AttackStage::Dormant;
}
}  // namespace

AttackResult attack_transform(const AttackState& state, double real_peak, const AttackConfig& cfg,
                              const DtmConfig& dtm) {
    AttackResult result{real_peak, state};
    if (!cfg.enabled) {
        result.state.stage = AttackStage::Dormant;
        return result;
    }

    result.state.stage = advance_stage(state.stage, real_peak, dtm);

    switch (result.state.stage) {
        case AttackStage::Dormant:
            break;
        case AttackStage::Stage1:
            // Inflate inside the trigger band; pass through in the hysteresis
            // band below it.
            if (real_peak >= dtm.th_trigger) {
                const double offset = draw(result.state.rng, cfg.distribution,
                                           cfg.stage1_offset_low, cfg.stage1_offset_high);
                result.reported_peak = real_peak + offset;
                result.state.credit_balance += result.reported_peak - real_peak;
            }
            break;
        case AttackStage::Stage2: {
            const double delta = draw(result.state.rng, cfg.distribution, cfg.stage2_delta_low,
                                      cfg.stage2_delta_high);
            const double margin = draw(result.state.rng, cfg.distribution, cfg.clamp_margin_low,
                                       cfg.clamp_margin_high);
            result.reported_peak = std::min(real_peak - delta, dtm.th_critical - margin);
            result.state.credit_balance =
                std::max(0.0, result.state.credit_balance - (real_peak - result.reported_peak));
            break;
        }
    }
    return result;
}

const char* to_string(AttackStage stage) {
    switch (stage) {
        case AttackStage::Dormant: return "DORMANT";
        case AttackStage::Stage1: return "STAGE1";
        case AttackStage::Stage2: return "STAGE2";
    }
    return "?";
}

AttackStage attack_stage_from_string(const char* name) {
    if (std::strcmp(name, "DORMANT") == 0) return AttackStage::Dormant;
    if (std::strcmp(name, "STAGE1") == 0) return AttackStage::Stage1;
    if (std::strcmp(name, "STAGE2") == 0) return AttackStage::Stage2;
    throw invalid_input(std::string("unknown attack stage: ") + name);
}

}  // namespace soctherm
