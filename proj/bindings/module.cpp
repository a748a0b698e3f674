/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "soctherm/config.hpp"
#include "soctherm/errors.hpp"
#include "soctherm/simulate.hpp"
#include "soctherm/stability.hpp"

namespace py = pybind11;
using namespace soctherm;

PYBIND11_MODULE(_soctherm, m) {
    m.doc() = "Multi-core thermal/DVFS co-simulator with a sensor-interface attack layer";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<runaway_error>(m, "RunawayError");
    py::register_exception<inference_error>(m, "InferenceError");

    py::enum_<AttackStage>(m, "AttackStage")
        .value("DORMANT", AttackStage::Dormant)
        .value("STAGE1", AttackStage::Stage1)
        .value("STAGE2", AttackStage::Stage2);

    py::enum_<GovernorMode>(m, "GovernorMode")
        .value("NORMAL", GovernorMode::Normal)
        .value("TRIGGERED", GovernorMode::Triggered)
        .value("CRITICAL_THROTTLE", GovernorMode::CriticalThrottle);

    py::enum_<FixedPointClass>(m, "FixedPointClass")
        .value("STABLE", FixedPointClass::Stable)
        .value("UNSTABLE", FixedPointClass::Unstable);

    py::class_<DtmConfig>(m, "DtmConfig")
        .def(py::init<>())
        .def_readwrite("th_trigger", &DtmConfig::th_trigger)
        .def_readwrite("th_critical", &DtmConfig::th_critical)
        .def_readwrite("th_recovery", &DtmConfig::th_recovery)
        .def_readwrite("f_min", &DtmConfig::f_min)
        .def_readwrite("f_max", &DtmConfig::f_max)
        .def_readwrite("f_step", &DtmConfig::f_step)
        .def_readwrite("ramp_step", &DtmConfig::ramp_step)
        .def_readwrite("f_band_floor", &DtmConfig::f_band_floor);

    py::class_<GovernorState>(m, "GovernorState")
        .def(py::init<>())
        .def_readwrite("mode", &GovernorState::mode)
        .def_readwrite("commanded_frequency", &GovernorState::commanded_frequency);

    py::class_<EpochRecord>(m, "EpochRecord")
        .def_readonly("epoch", &EpochRecord::epoch)
        .def_readonly("per_core_real_temp", &EpochRecord::per_core_real_temp)
        .def_readonly("reported_peak", &EpochRecord::reported_peak)
        .def_readonly("frequency", &EpochRecord::frequency)
        .def_readonly("total_power", &EpochRecord::total_power)
        .def_readonly("per_core_utilization", &EpochRecord::per_core_utilization)
        .def_readonly("attack_stage", &EpochRecord::attack_stage)
        .def_readonly("credit_balance", &EpochRecord::credit_balance)
        .def("real_peak", &EpochRecord::real_peak);

    py::class_<IreRecord>(m, "IreRecord")
        .def_readonly("start_epoch", &IreRecord::start_epoch)
        .def_readonly("duration_epochs", &IreRecord::duration_epochs)
        .def_readonly("min_frequency", &IreRecord::min_frequency);

    py::class_<UtilizationBuckets>(m, "UtilizationBuckets")
        .def_readonly("low", &UtilizationBuckets::low)
        .def_readonly("balanced", &UtilizationBuckets::balanced)
        .def_readonly("full", &UtilizationBuckets::full);

    py::class_<StealthReport>(m, "StealthReport")
        .def_readonly("mean_clean", &StealthReport::mean_clean)
        .def_readonly("mean_infected", &StealthReport::mean_infected)
        .def_readonly("deviation_pct", &StealthReport::deviation_pct)
        .def_readonly("flagged", &StealthReport::flagged);

    py::class_<ThresholdEstimate>(m, "ThresholdEstimate")
        .def_readonly("th_critical_est", &ThresholdEstimate::th_critical_est)
        .def_readonly("th_recovery_est", &ThresholdEstimate::th_recovery_est)
        .def_readonly("throttle_fraction", &ThresholdEstimate::throttle_fraction)
        .def_readonly("trials", &ThresholdEstimate::trials);

    py::class_<FixedPoint>(m, "FixedPoint")
        .def_readonly("temperature", &FixedPoint::temperature)
        .def_readonly("power", &FixedPoint::power)
        .def_readonly("classification", &FixedPoint::classification)
        .def_readonly("slope_power", &FixedPoint::slope_power)
        .def_readonly("slope_dissipation", &FixedPoint::slope_dissipation)
        .def_readonly("degenerate", &FixedPoint::degenerate);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_property(
            "seed", [](const ScenarioConfig& c) { return c.run.seed; },
            [](ScenarioConfig& c, std::uint64_t s) { c.run.seed = s; })
        .def_property(
            "epochs", [](const ScenarioConfig& c) { return c.run.total_epochs; },
            [](ScenarioConfig& c, long e) { c.run.total_epochs = e; })
        .def_property(
            "attack_enabled", [](const ScenarioConfig& c) { return c.attack.enabled; },
            [](ScenarioConfig& c, bool e) { c.attack.enabled = e; })
        .def_readwrite("dtm", &ScenarioConfig::dtm)
        .def("validate", &ScenarioConfig::validate);

    m.def("default_config", &default_config);
    m.def("load_config", &load_config_file, py::arg("path"));
    m.def("load_config_string", &load_config_string, py::arg("text"));
    m.def("save_config", &save_config, py::arg("config"));

    m.def("governor_step", &governor_step, py::arg("state"), py::arg("reported_peak_temp"),
          py::arg("cfg"));
    m.def("make_governor_state", &make_governor_state, py::arg("cfg"));

    m.def(
        "simulate",
        [](const ScenarioConfig& cfg) {
            py::gil_scoped_release release;
            return simulate(cfg);
        },
        py::arg("config"));
    m.def(
        "simulate_with_attack",
        [](const ScenarioConfig& cfg, bool enabled) {
            py::gil_scoped_release release;
            return simulate_with_attack(cfg, enabled);
        },
        py::arg("config"), py::arg("attack_enabled"));

    m.def("detect_ires", [](const std::vector<EpochRecord>& trace, double threshold) {
        return detect_ires(trace, threshold);
    });
    m.def("utilization_buckets", [](const std::vector<EpochRecord>& trace) {
        return utilization_buckets(trace);
    });
    m.def("power_delta_histogram",
          [](const std::vector<EpochRecord>& attacked, const std::vector<EpochRecord>& clean,
             const std::vector<double>& edges) {
              return power_delta_histogram(attacked, clean, edges);
          });
    m.def("stealth_detect", [](const std::vector<EpochRecord>& clean,
                               const std::vector<EpochRecord>& infected, double threshold_pct) {
        return stealth_detect(clean, infected, threshold_pct);
    });

    m.def(
        "compare_report",
        [](const ScenarioConfig& cfg) {
            py::gil_scoped_release release;
            const CompareResult result = compare(cfg);
            return compare_report_json(result, cfg);
        },
        py::arg("config"), "run clean + infected and return the compare report JSON text");

    m.def(
        "infer_thresholds",
        [](const ScenarioConfig& cfg, std::size_t core, int trials) {
            py::gil_scoped_release release;
            return run_probe_inference(cfg, core, trials);
        },
        py::arg("config"), py::arg("core") = 0, py::arg("trials") = 5);

    m.def(
        "find_fixed_points",
        [](const ScenarioConfig& cfg, double frequency, double low, double high) {
            StabilityProblem problem;
            problem.params = cfg.power;
            const ThermalNetwork net = cfg.build_network();
            problem.g_eff = net.ambient_conductance();
            problem.ambient = net.ambient_temp;
            problem.frequency = frequency;
            problem.utilization = 1.0;
            return find_fixed_points(problem, low, high, 0.1);
        },
        py::arg("config"), py::arg("frequency"), py::arg("range_low"), py::arg("range_high"));

    m.def("generate_trace_csv",
          [](const std::string& profile, const std::string& path, long epochs, long cores,
             std::uint64_t seed) {
              ProfileSpec spec = is_profile_alias(profile) ? profile_alias(profile) : ProfileSpec{};
              if (!is_profile_alias(profile)) spec.kind = profile_kind_from_string(profile);
              spec.rng_seed = seed;
              save_trace(generate_trace(spec, static_cast<std::size_t>(epochs),
                                        static_cast<std::size_t>(cores)),
                         path);
          },
          py::arg("profile"), py::arg("path"), py::arg("epochs") = 2000, py::arg("cores") = 4,
          py::arg("seed") = 1);
}
