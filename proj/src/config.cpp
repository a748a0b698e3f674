/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "soctherm/errors.hpp"
#include "text_util.hpp"

namespace soctherm {

namespace {

struct IniValue {
    std::string text;
    std::size_t line = 0;
    mutable bool used = false;
};

using IniSection = std::map<std::string, IniValue>;
using IniFile = std::map<std::string, IniSection>;

IniFile parse_ini(std::istream& in, const std::string& origin) {
    IniFile file;
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (view.empty() || view.front() == '#' || view.front() == ';') continue;
        if (view.front() == '[') {
            if (view.back() != ']') throw parse_error(origin + ": unterminated section", line_no);
            section = std::string(detail::trim(view.substr(1, view.size() - 2)));
            if (section.empty()) throw parse_error(origin + ": empty section name", line_no);
            file[section];
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw parse_error(origin + ": expected 'key = value'", line_no);
        if (section.empty())
            throw parse_error(origin + ": key outside any [section]", line_no);
        const std::string key(detail::trim(view.substr(0, eq)));
        if (key.empty()) throw parse_error(origin + ": empty key", line_no);
        auto [it, inserted] =
            file[section].emplace(key, IniValue{std::string(detail::trim(view.substr(eq + 1))),
                                                line_no, false});
        if (!inserted) throw parse_error(origin + ": duplicate key '" + key + "'", line_no);
    }
    return file;
}

class Extractor {
  public:
    Extractor(const IniFile& file, const std::string& origin) : file_(file), origin_(origin) {}

    bool has(const std::string& section, const std::string& key) const {
        const auto s = file_.find(section);
        return s != file_.end() && s->second.count(key) > 0;
    }

    const IniValue& raw(const std::string& section, const std::string& key) const {
        const auto& v = file_.at(section).at(key);
        v.used = true;
        return v;
    }

    void get(const std::string& s, const std::string& k, double& out) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        out = detail::parse_double(v.text, v.line);
    }
    void get(const std::string& s, const std::string& k, long& out) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        out = detail::parse_long(v.text, v.line);
    }
    void get_size(const std::string& s, const std::string& k, std::size_t& out) const {
        long v = static_cast<long>(out);
        get(s, k, v);
        if (v < 0) throw config_error(origin_ + ": " + s + "." + k + " must be non-negative");
        out = static_cast<std::size_t>(v);
    }
    void get(const std::string& s, const std::string& k, std::uint64_t& out) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        out = detail::parse_u64(v.text, v.line);
    }
    void get(const std::string& s, const std::string& k, std::string& out) const {
        if (!has(s, k)) return;
        out = raw(s, k).text;
    }
    void get(const std::string& s, const std::string& k, bool& out) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        if (v.text == "true" || v.text == "1")
            out = true;
        else if (v.text == "false" || v.text == "0")
            out = false;
        else
            throw parse_error(origin_ + ": expected true/false for " + s + "." + k, v.line);
    }
    void get_range(const std::string& s, const std::string& k, double& low, double& high) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        const auto values = parse_list(v.text, v.line);
        if (values.size() != 2)
            throw parse_error(origin_ + ": " + s + "." + k + " wants 'low, high'", v.line);
        low = values[0];
        high = values[1];
    }
    void get_list(const std::string& s, const std::string& k, std::vector<double>& out) const {
        if (!has(s, k)) return;
        const auto& v = raw(s, k);
        out = parse_list(v.text, v.line);
    }

    std::vector<double> parse_list(std::string_view text, std::size_t line) const {
        std::vector<double> values;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == ',') {
                const auto piece = detail::trim(text.substr(start, i - start));
                if (!piece.empty()) values.push_back(detail::parse_double(piece, line));
                start = i + 1;
            }
        }
        return values;
    }

    // Every recognized section/key must have been consumed.
    void check_unused(std::initializer_list<const char*> known_sections) const {
        for (const auto& [section, keys] : file_) {
            bool known = false;
            for (const char* s : known_sections) known |= section == s;
            if (!known)
                throw config_error(origin_ + ": unknown section [" + section + "]");
            for (const auto& [key, value] : keys) {
                if (!value.used)
                    throw parse_error(origin_ + ": unknown key " + section + "." + key,
                                      value.line);
            }
        }
    }

  private:
    const IniFile& file_;
    std::string origin_;
};

WorkloadSource source_from_string(const std::string& name, const std::string& origin) {
    if (name == "profile") return WorkloadSource::Profile;
    if (name == "file") return WorkloadSource::File;
    throw config_error(origin + ": workload.source must be 'profile' or 'file'");
}

}  // namespace

ThermalNetwork ScenarioConfig::build_network() const {
    if (!explicit_conductance.empty()) {
        ThermalNetwork net;
        net.node_count = explicit_capacitance.size();
        net.core_count = explicit_core_count ? explicit_core_count : net.node_count;
        net.conductance = explicit_conductance;
        net.capacitance = explicit_capacitance;
        net.ambient_temp = floorplan.ambient_temp;
        net.validate();
        return net;
    }
    return build_floorplan(floorplan);
}

WorkloadTrace ScenarioConfig::build_workload() const {
    const std::size_t cores = explicit_conductance.empty()
                                  ? floorplan.core_count
                                  : (explicit_core_count ? explicit_core_count
                                                         : explicit_capacitance.size());
    if (workload.source == WorkloadSource::File) {
        WorkloadTrace trace = load_trace(workload.path);
        if (trace.core_count != cores)
            throw config_error("workload file has " + std::to_string(trace.core_count) +
                               " cores, scenario has " + std::to_string(cores));
        if (static_cast<long>(trace.epoch_count) < run.total_epochs)
            throw config_error("workload file shorter than run.epochs");
        return trace;
    }
    ProfileSpec spec = workload.spec;
    spec.rng_seed = run.seed + 1;  // derived from the master seed
    return generate_trace(spec, static_cast<std::size_t>(run.total_epochs), cores);
}

void ScenarioConfig::validate() const {
    if (run.total_epochs < 1) throw config_error("run.epochs must be >= 1");
    if (!(run.epoch_duration > 0.0)) throw config_error("run.epoch_duration must be positive");
    if (!(run.thermal_dt > 0.0)) throw config_error("run.thermal_dt must be positive");
    const double substeps = run.epoch_duration / run.thermal_dt;
    if (std::fabs(substeps - std::round(substeps)) > 1e-9 || substeps < 1.0)
        throw config_error("run.epoch_duration must be an integer multiple of run.thermal_dt");
    if (run.trace_decimation < 1) throw config_error("run.trace_decimation must be >= 1");
    if (!(run.sensor_quantization >= 0.0))
        throw config_error("run.sensor_quantization must be >= 0");

    const ThermalNetwork net = build_network();
    if (!(run.temp_guard > net.ambient_temp))
        throw config_error("run.temp_guard must exceed the ambient temperature");
    if (run.thermal_dt >= net.max_stable_dt())
        throw config_error("run.thermal_dt violates the Euler stability bound (max " +
                           detail::format_double(net.max_stable_dt()) + " s)");

    power.validate(net.ambient_temp);
    dtm.validate();
    attack.validate();
    // The ladder must live inside the voltage map.
    try {
        power.voltage_map.voltage_at(dtm.f_min);
        power.voltage_map.voltage_at(dtm.f_max);
    } catch (const invalid_input&) {
        throw config_error("frequency ladder extends outside the voltage map");
    }

    if (workload.source == WorkloadSource::File) {
        if (workload.path.empty()) throw config_error("workload.path required for file source");
    } else {
        if (!workload.profile.empty() && !is_profile_alias(workload.profile)) {
            try {
                profile_kind_from_string(workload.profile);
            } catch (const invalid_input& e) {
                throw config_error(e.what());
            }
        }
        workload.spec.validate();
    }

    if (!(metrics.ire_threshold > 0.0)) throw config_error("metrics.ire_threshold must be > 0");
    if (metrics.power_bucket_edges.empty())
        throw config_error("metrics.power_bucket_edges must not be empty");
    if (!std::is_sorted(metrics.power_bucket_edges.begin(), metrics.power_bucket_edges.end()))
        throw config_error("metrics.power_bucket_edges must be sorted");
    if (!(metrics.stealth_threshold_pct > 0.0))
        throw config_error("metrics.stealth_threshold_pct must be > 0");

    if (!explicit_conductance.empty()) {
        const std::size_t n = explicit_capacitance.size();
        if (explicit_conductance.size() != n * n)
            throw config_error("explicit conductance matrix must be square over the "
                               "capacitance vector length");
    }
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
    return run.total_epochs == o.run.total_epochs &&
           run.epoch_duration == o.run.epoch_duration && run.thermal_dt == o.run.thermal_dt &&
           run.seed == o.run.seed && run.label == o.run.label && run.out_dir == o.run.out_dir &&
           run.trace_decimation == o.run.trace_decimation &&
           run.sensor_quantization == o.run.sensor_quantization &&
           run.temp_guard == o.run.temp_guard && floorplan == o.floorplan &&
           explicit_conductance == o.explicit_conductance &&
           explicit_capacitance == o.explicit_capacitance &&
           explicit_core_count == o.explicit_core_count && power == o.power && dtm == o.dtm &&
           attack == o.attack && workload == o.workload && metrics == o.metrics;
}

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig load_config(std::istream& in, const std::string& origin) {
    const IniFile file = parse_ini(in, origin);
    const Extractor x(file, origin);
    ScenarioConfig cfg;

    x.get("run", "epochs", cfg.run.total_epochs);
    x.get("run", "epoch_duration", cfg.run.epoch_duration);
    x.get("run", "thermal_dt", cfg.run.thermal_dt);
    x.get("run", "seed", cfg.run.seed);
    x.get("run", "label", cfg.run.label);
    x.get("run", "out_dir", cfg.run.out_dir);
    x.get("run", "trace_decimation", cfg.run.trace_decimation);
    x.get("run", "sensor_quantization", cfg.run.sensor_quantization);
    x.get("run", "temp_guard", cfg.run.temp_guard);

    x.get_size("thermal", "core_count", cfg.floorplan.core_count);
    x.get_size("thermal", "cores_per_cluster", cfg.floorplan.cores_per_cluster);
    x.get("thermal", "g_core_spreader", cfg.floorplan.g_core_spreader);
    x.get("thermal", "g_core_core", cfg.floorplan.g_core_core);
    x.get("thermal", "g_spreader_ambient", cfg.floorplan.g_spreader_ambient);
    x.get("thermal", "g_spreader_spreader", cfg.floorplan.g_spreader_spreader);
    x.get("thermal", "core_capacitance", cfg.floorplan.core_capacitance);
    x.get("thermal", "spreader_capacitance", cfg.floorplan.spreader_capacitance);
    x.get("thermal", "ambient", cfg.floorplan.ambient_temp);
    if (x.has("thermal", "conductance_matrix")) {
        const auto& v = x.raw("thermal", "conductance_matrix");
        // Rows separated by ';', values by ','.
        std::string_view text = v.text;
        std::size_t rows = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == ';') {
                const auto row = x.parse_list(text.substr(start, i - start), v.line);
                if (!row.empty()) {
                    cfg.explicit_conductance.insert(cfg.explicit_conductance.end(), row.begin(),
                                                    row.end());
                    ++rows;
                }
                start = i + 1;
            }
        }
        if (rows == 0 || cfg.explicit_conductance.size() != rows * rows)
            throw parse_error(origin + ": conductance_matrix must be square", v.line);
    }
    x.get_list("thermal", "capacitance_vector", cfg.explicit_capacitance);
    x.get_size("thermal", "matrix_core_count", cfg.explicit_core_count);

    x.get("power", "effective_capacitance", cfg.power.effective_capacitance);
    if (x.has("power", "voltage_points")) {
        const auto& v = x.raw("power", "voltage_points");
        std::vector<std::pair<double, double>> points;
        std::string_view text = v.text;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == ',') {
                const auto piece = detail::trim(text.substr(start, i - start));
                start = i + 1;
                if (piece.empty()) continue;
                const auto colon = piece.find(':');
                if (colon == std::string_view::npos)
                    throw parse_error(origin + ": voltage_points wants 'freq:volt' pairs",
                                      v.line);
                points.emplace_back(detail::parse_double(detail::trim(piece.substr(0, colon)),
                                                         v.line),
                                    detail::parse_double(detail::trim(piece.substr(colon + 1)),
                                                         v.line));
            }
        }
        cfg.power.voltage_map = VoltageMap(std::move(points));
    }
    if (x.has("power", "leakage_model")) {
        const auto& v = x.raw("power", "leakage_model");
        if (v.text == "linear")
            cfg.power.leakage = LeakageKind::Linear;
        else if (v.text == "exponential")
            cfg.power.leakage = LeakageKind::Exponential;
        else
            throw parse_error(origin + ": leakage_model must be linear or exponential", v.line);
    }
    x.get("power", "k_lin", cfg.power.k_lin);
    x.get("power", "beta", cfg.power.beta);
    x.get("power", "p_leak0", cfg.power.p_leak0);
    x.get("power", "t_ref", cfg.power.t_ref);

    x.get("dtm", "th_trigger", cfg.dtm.th_trigger);
    x.get("dtm", "th_critical", cfg.dtm.th_critical);
    x.get("dtm", "th_recovery", cfg.dtm.th_recovery);
    x.get("dtm", "f_min", cfg.dtm.f_min);
    x.get("dtm", "f_max", cfg.dtm.f_max);
    x.get("dtm", "f_step", cfg.dtm.f_step);
    x.get("dtm", "ramp_step", cfg.dtm.ramp_step);
    x.get("dtm", "f_band_floor", cfg.dtm.f_band_floor);

    x.get("attack", "enabled", cfg.attack.enabled);
    x.get_range("attack", "stage1_offset", cfg.attack.stage1_offset_low,
                cfg.attack.stage1_offset_high);
    x.get_range("attack", "stage2_delta", cfg.attack.stage2_delta_low,
                cfg.attack.stage2_delta_high);
    x.get_range("attack", "clamp_margin", cfg.attack.clamp_margin_low,
                cfg.attack.clamp_margin_high);
    if (x.has("attack", "distribution")) {
        const auto& v = x.raw("attack", "distribution");
        if (v.text == "uniform")
            cfg.attack.distribution = DrawDistribution::Uniform;
        else if (v.text == "truncated_normal")
            cfg.attack.distribution = DrawDistribution::TruncatedNormal;
        else
            throw parse_error(origin + ": distribution must be uniform or truncated_normal",
                              v.line);
    }

    if (x.has("workload", "source")) {
        cfg.workload.source = source_from_string(x.raw("workload", "source").text, origin);
    }
    x.get("workload", "profile", cfg.workload.profile);
    if (!cfg.workload.profile.empty() && is_profile_alias(cfg.workload.profile)) {
        cfg.workload.spec = profile_alias(cfg.workload.profile);
    } else if (!cfg.workload.profile.empty()) {
        try {
            cfg.workload.spec.kind = profile_kind_from_string(cfg.workload.profile);
        } catch (const invalid_input& e) {
            throw config_error(origin + ": " + e.what());
        }
    }
    // Explicit keys override whatever the alias provided.
    x.get("workload", "base_activity", cfg.workload.spec.base_activity);
    x.get("workload", "burst_amplitude", cfg.workload.spec.burst_amplitude);
    x.get("workload", "burst_period", cfg.workload.spec.burst_period);
    x.get("workload", "noise_sigma", cfg.workload.spec.noise_sigma);
    x.get("workload", "path", cfg.workload.path);

    x.get("metrics", "ire_threshold", cfg.metrics.ire_threshold);
    x.get_list("metrics", "power_bucket_edges", cfg.metrics.power_bucket_edges);
    x.get("metrics", "stealth_threshold_pct", cfg.metrics.stealth_threshold_pct);

    x.check_unused({"run", "thermal", "power", "dtm", "attack", "workload", "metrics"});
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    return load_config(in, path);
}

ScenarioConfig load_config_string(const std::string& text) {
    std::istringstream in(text);
    return load_config(in, "<string>");
}

std::string save_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    const auto d = [](double v) { return detail::format_double(v); };

    out << "[run]\n";
    out << "epochs = " << cfg.run.total_epochs << "\n";
    out << "epoch_duration = " << d(cfg.run.epoch_duration) << "\n";
    out << "thermal_dt = " << d(cfg.run.thermal_dt) << "\n";
    out << "seed = " << cfg.run.seed << "\n";
    out << "label = " << cfg.run.label << "\n";
    out << "out_dir = " << cfg.run.out_dir << "\n";
    out << "trace_decimation = " << cfg.run.trace_decimation << "\n";
    out << "sensor_quantization = " << d(cfg.run.sensor_quantization) << "\n";
    out << "temp_guard = " << d(cfg.run.temp_guard) << "\n";

    out << "\n[thermal]\n";
    out << "core_count = " << cfg.floorplan.core_count << "\n";
    out << "cores_per_cluster = " << cfg.floorplan.cores_per_cluster << "\n";
    out << "g_core_spreader = " << d(cfg.floorplan.g_core_spreader) << "\n";
    out << "g_core_core = " << d(cfg.floorplan.g_core_core) << "\n";
    out << "g_spreader_ambient = " << d(cfg.floorplan.g_spreader_ambient) << "\n";
    out << "g_spreader_spreader = " << d(cfg.floorplan.g_spreader_spreader) << "\n";
    out << "core_capacitance = " << d(cfg.floorplan.core_capacitance) << "\n";
    out << "spreader_capacitance = " << d(cfg.floorplan.spreader_capacitance) << "\n";
    out << "ambient = " << d(cfg.floorplan.ambient_temp) << "\n";
    if (!cfg.explicit_conductance.empty()) {
        const std::size_t n = cfg.explicit_capacitance.size();
        out << "conductance_matrix = ";
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) out << " ; ";
            for (std::size_t j = 0; j < n; ++j) {
                if (j > 0) out << ", ";
                out << d(cfg.explicit_conductance[i * n + j]);
            }
        }
        out << "\n";
        out << "capacitance_vector = ";
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) out << ", ";
            out << d(cfg.explicit_capacitance[i]);
        }
        out << "\n";
        out << "matrix_core_count = " << cfg.explicit_core_count << "\n";
    }

    out << "\n[power]\n";
    out << "effective_capacitance = " << d(cfg.power.effective_capacitance) << "\n";
    out << "voltage_points = ";
    for (std::size_t i = 0; i < cfg.power.voltage_map.points().size(); ++i) {
        const auto& [f, v] = cfg.power.voltage_map.points()[i];
        if (i > 0) out << ", ";
        out << d(f) << ":" << d(v);
    }
    out << "\n";
    out << "leakage_model = "
        << (cfg.power.leakage == LeakageKind::Linear ? "linear" : "exponential") << "\n";
    out << "k_lin = " << d(cfg.power.k_lin) << "\n";
    out << "beta = " << d(cfg.power.beta) << "\n";
    out << "p_leak0 = " << d(cfg.power.p_leak0) << "\n";
    out << "t_ref = " << d(cfg.power.t_ref) << "\n";

    out << "\n[dtm]\n";
    out << "th_trigger = " << d(cfg.dtm.th_trigger) << "\n";
    out << "th_critical = " << d(cfg.dtm.th_critical) << "\n";
    out << "th_recovery = " << d(cfg.dtm.th_recovery) << "\n";
    out << "f_min = " << d(cfg.dtm.f_min) << "\n";
    out << "f_max = " << d(cfg.dtm.f_max) << "\n";
    out << "f_step = " << d(cfg.dtm.f_step) << "\n";
    out << "ramp_step = " << d(cfg.dtm.ramp_step) << "\n";
    out << "f_band_floor = " << d(cfg.dtm.f_band_floor) << "\n";

    out << "\n[attack]\n";
    out << "enabled = " << (cfg.attack.enabled ? "true" : "false") << "\n";
    out << "stage1_offset = " << d(cfg.attack.stage1_offset_low) << ", "
        << d(cfg.attack.stage1_offset_high) << "\n";
    out << "stage2_delta = " << d(cfg.attack.stage2_delta_low) << ", "
        << d(cfg.attack.stage2_delta_high) << "\n";
    out << "clamp_margin = " << d(cfg.attack.clamp_margin_low) << ", "
        << d(cfg.attack.clamp_margin_high) << "\n";
    out << "distribution = "
        << (cfg.attack.distribution == DrawDistribution::Uniform ? "uniform" : "truncated_normal")
        << "\n";

    out << "\n[workload]\n";
    out << "source = " << (cfg.workload.source == WorkloadSource::Profile ? "profile" : "file")
        << "\n";
    out << "profile = "
        << (cfg.workload.profile.empty() ? to_string(cfg.workload.spec.kind)
                                         : cfg.workload.profile.c_str())
        << "\n";
    out << "base_activity = " << d(cfg.workload.spec.base_activity) << "\n";
    out << "burst_amplitude = " << d(cfg.workload.spec.burst_amplitude) << "\n";
    out << "burst_period = " << cfg.workload.spec.burst_period << "\n";
    out << "noise_sigma = " << d(cfg.workload.spec.noise_sigma) << "\n";
    if (!cfg.workload.path.empty()) out << "path = " << cfg.workload.path << "\n";

    out << "\n[metrics]\n";
    out << "ire_threshold = " << d(cfg.metrics.ire_threshold) << "\n";
    out << "power_bucket_edges = ";
    for (std::size_t i = 0; i < cfg.metrics.power_bucket_edges.size(); ++i) {
        if (i > 0) out << ", ";
        out << d(cfg.metrics.power_bucket_edges[i]);
    }
    out << "\n";
    out << "stealth_threshold_pct = " << d(cfg.metrics.stealth_threshold_pct) << "\n";
    return out.str();
}

}  // namespace soctherm
