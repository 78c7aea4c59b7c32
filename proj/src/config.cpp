// Copyright 2026 The ghzclock Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzclock/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ghzclock/error.hpp"

namespace ghzclock {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string &path, const std::string &what) {
    throw Error(code, path + ": " + what);
}

std::string join(const std::string &base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

/// Strict reader for one JSON object: remembers which keys were consumed and
/// rejects the rest in finish().
class ObjectReader {
  public:
    ObjectReader(const json &node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(ErrorCode::ConfigSyntax, label(), "expected an object");
    }

    const json *find(const char *key) {
        known_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(const char *key, double &out) {
        if (const json *v = find(key)) out = as_number(*v, join(path_, key));
    }

    void optional_number(const char *key, std::optional<double> &out) {
        if (const json *v = find(key)) {
            if (v->is_null()) {
                out.reset();
            } else {
                out = as_number(*v, join(path_, key));
            }
        }
    }

    void integer(const char *key, long &out) {
        if (const json *v = find(key)) {
            if (!v->is_number_integer()) fail(ErrorCode::ConfigSyntax, join(path_, key), "expected an integer");
            out = v->get<long>();
        }
    }

    void unsigned_integer(const char *key, std::uint64_t &out) {
        if (const json *v = find(key)) {
            if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
                fail(ErrorCode::ConfigSyntax, join(path_, key), "expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void string(const char *key, std::string &out) {
        if (const json *v = find(key)) {
            if (!v->is_string()) fail(ErrorCode::ConfigSyntax, join(path_, key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!known_.contains(it.key())) {
                fail(ErrorCode::ConfigUnknownKey, join(path_, it.key()), "unknown key");
            }
        }
    }

    [[nodiscard]] const std::string &path() const { return path_; }

  private:
    [[nodiscard]] std::string label() const { return path_.empty() ? "<root>" : path_; }

    static double as_number(const json &v, const std::string &path) {
        if (!v.is_number()) fail(ErrorCode::ConfigSyntax, path, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(ErrorCode::ConfigRange, path, "must be finite");
        return x;
    }

    const json &node_;
    std::string path_;
    std::set<std::string> known_;
};

void check(bool ok, const std::string &path, const std::string &what,
           ErrorCode code = ErrorCode::ConfigRange) {
    if (!ok) fail(code, path, what);
}

SpeciesConfig parse_species(const json &node, const std::string &path) {
    ObjectReader r(node, path);
    SpeciesConfig s;
    r.string("name", s.name);
    r.number("mass_u", s.mass_u);
    r.number("alpha_scalar_au", s.alpha_scalar_au);
    r.number("rho", s.rho);
    std::string role = "clock";
    r.string("role", role);
    r.number("F", s.F);
    r.number("M_F", s.M_F);
    r.finish();

    try {
        s.role = species_role_from_string(role);
    } catch (const Error &e) {
        fail(ErrorCode::ConfigRange, path + ".role", e.what());
    }
    check(!s.name.empty(), path + ".name", "must not be empty");
    check(s.mass_u > 0.0, path + ".mass_u", "must be positive");
    if (s.role == SpeciesRole::Clock) {
        check(s.rho == 0.0, path + ".rho", "clock states are scalar, rho must be 0");
    } else {
        check(s.F > 0.0, path + ".F", "head states need F > 0");
        check(std::abs(s.M_F) <= s.F, path + ".M_F", "|M_F| must not exceed F");
    }
    return s;
}

void parse_lattice(const json &node, LatticeSection &l) {
    ObjectReader r(node, "lattice");
    r.number("lambda_m_nm", l.lambda_m_nm);
    r.optional_number("intensity_kW_cm2", l.intensity_kW_cm2);
    r.number("delta", l.delta);
    r.number("phi_rad", l.phi_rad);
    r.optional_number("transverse_intensity_kW_cm2", l.transverse_intensity_kW_cm2);
    r.finish();
    check(l.lambda_m_nm > 0.0, "lattice.lambda_m_nm", "must be positive");
    check(std::abs(l.delta) <= 1.0, "lattice.delta", "|delta| must not exceed 1");
    check(!l.intensity_kW_cm2 || *l.intensity_kW_cm2 > 0.0, "lattice.intensity_kW_cm2",
          "must be positive (or null for the minimum required intensity)");
    check(!l.transverse_intensity_kW_cm2 || *l.transverse_intensity_kW_cm2 > 0.0,
          "lattice.transverse_intensity_kW_cm2", "must be positive (or null)");
}

void parse_protocol(const json &node, ProtocolSection &p) {
    ObjectReader r(node, "protocol");
    r.integer("n_atoms", p.n_atoms);
    r.number("ramsey_time_s", p.ramsey_time_s);
    r.number("a_scatt_au", p.a_scatt_au);
    r.number("transport_time_us", p.transport_time_us);
    r.optional_number("gate_time_us", p.gate_time_us);
    r.number("pulse_time_us", p.pulse_time_us);
    r.number("depth_factor", p.depth_factor);
    r.finish();
    check(p.n_atoms >= 1, "protocol.n_atoms", "protocol needs at least one clock atom",
          ErrorCode::InvalidProtocolSize);
    check(p.ramsey_time_s >= 0.0, "protocol.ramsey_time_s", "must be non-negative");
    check(p.transport_time_us >= 0.0, "protocol.transport_time_us", "must be non-negative");
    check(!p.gate_time_us || *p.gate_time_us >= 0.0, "protocol.gate_time_us",
          "must be non-negative (or null to derive it)");
    check(p.pulse_time_us >= 0.0, "protocol.pulse_time_us", "must be non-negative");
    check(p.depth_factor >= 0.0, "protocol.depth_factor", "must be non-negative");
}

std::string_view to_string(NoiseMode mode) {
    switch (mode) {
    case NoiseMode::Computed: return "computed";
    case NoiseMode::Override: return "override";
    case NoiseMode::None: return "none";
    }
    return "computed";
}

void parse_noise(const json &node, NoiseSection &n) {
    ObjectReader r(node, "noise");
    std::string mode(to_string(n.mode));
    r.string("mode", mode);
    r.optional_number("tau_scatter_clock_s", n.tau_scatter_clock_s);
    r.optional_number("tau_scatter_head_s", n.tau_scatter_head_s);
    r.number("extra_loss_rate_per_s", n.extra_loss_rate_per_s);
    r.finish();
    if (mode == "computed") {
        n.mode = NoiseMode::Computed;
    } else if (mode == "override") {
        n.mode = NoiseMode::Override;
    } else if (mode == "none") {
        n.mode = NoiseMode::None;
    } else {
        fail(ErrorCode::ConfigRange, "noise.mode", "expected computed, override or none");
    }
    check(n.extra_loss_rate_per_s >= 0.0, "noise.extra_loss_rate_per_s", "must be non-negative");
    if (n.mode == NoiseMode::Override) {
        check(n.tau_scatter_clock_s.has_value() && *n.tau_scatter_clock_s > 0.0,
              "noise.tau_scatter_clock_s", "override mode needs a positive lifetime");
        check(n.tau_scatter_head_s.has_value() && *n.tau_scatter_head_s > 0.0,
              "noise.tau_scatter_head_s", "override mode needs a positive lifetime");
    }
}

void parse_run(const json &node, RunSection &run) {
    ObjectReader r(node, "run");
    if (const json *v = r.find("backend")) {
        if (!v->is_string()) fail(ErrorCode::ConfigSyntax, "run.backend", "expected a string");
        try {
            run.backend = backend_from_string(v->get<std::string>());
        } catch (const Error &e) {
            fail(ErrorCode::ConfigRange, "run.backend", e.what());
        }
    }
    r.integer("trajectories", run.trajectories);
    r.unsigned_integer("seed", run.seed);
    r.integer("shots", run.shots);
    r.number("delta_omega_rad_s", run.delta_omega_rad_s);
    r.number("delta_omega_head_rad_s", run.delta_omega_head_rad_s);
    if (const json *v = r.find("detuning")) {
        ObjectReader d(*v, "run.detuning");
        d.optional_number("min_rad_s", run.detuning.min_rad_s);
        d.optional_number("max_rad_s", run.detuning.max_rad_s);
        d.integer("points", run.detuning.points);
        d.finish();
    }
    r.integer("n_min", run.n_min);
    r.integer("n_max", run.n_max);
    r.integer("n_step", run.n_step);
    r.integer("dense_cap", run.dense_cap);
    r.finish();
    check(run.trajectories >= 0, "run.trajectories", "must be non-negative");
    check(run.shots >= 1, "run.shots", "must be at least 1");
    check(run.detuning.points >= 1, "run.detuning.points", "must be at least 1");
    if (run.detuning.min_rad_s && run.detuning.max_rad_s) {
        check(*run.detuning.max_rad_s >= *run.detuning.min_rad_s, "run.detuning.max_rad_s",
              "must not be below min_rad_s");
    }
    check(run.n_min >= 1, "run.n_min", "must be at least 1");
    check(run.n_max >= run.n_min, "run.n_max", "must not be below n_min");
    check(run.n_step >= 1, "run.n_step", "must be at least 1");
    check(run.dense_cap >= 1 && run.dense_cap <= 30, "run.dense_cap", "must lie in [1, 30]");
}

void parse_sweep(const json &node, SweepSection &sweep) {
    ObjectReader r(node, "sweep");
    sweep.axes.clear();
    if (const json *axes = r.find("axes")) {
        if (!axes->is_array()) fail(ErrorCode::ConfigSyntax, "sweep.axes", "expected an array");
        for (std::size_t i = 0; i < axes->size(); ++i) {
            const std::string path = "sweep.axes[" + std::to_string(i) + "]";
            ObjectReader axis((*axes)[i], path);
            std::string target;
            axis.string("path", target);
            const json *values = axis.find("values");
            axis.finish();
            check(!target.empty(), path + ".path", "must name a config parameter");
            if (values == nullptr || !values->is_array() || values->empty()) {
                fail(ErrorCode::ConfigSyntax, path + ".values", "expected a non-empty array");
            }
            sweep.axes.emplace_back(target, std::vector<json>(values->begin(), values->end()));
        }
    }
    r.finish();
}

RunConfig parse_json(const json &root) {
    RunConfig config;
    config.species = default_species();
    if (root.is_null()) {
        return config;
    }
    ObjectReader r(root, "");
    if (const json *v = r.find("species")) {
        if (!v->is_array() || v->empty()) {
            fail(ErrorCode::ConfigSyntax, "species", "expected a non-empty array");
        }
        config.species.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            config.species.push_back(
                parse_species((*v)[i], "species[" + std::to_string(i) + "]"));
        }
    }
    if (const json *v = r.find("lattice")) parse_lattice(*v, config.lattice);
    if (const json *v = r.find("protocol")) parse_protocol(*v, config.protocol);
    if (const json *v = r.find("noise")) parse_noise(*v, config.noise);
    if (const json *v = r.find("run")) parse_run(*v, config.run);
    if (const json *v = r.find("sweep")) parse_sweep(*v, config.sweep);
    r.finish();
    return config;
}

json optional_to_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

} // namespace

SpeciesOptics SpeciesConfig::to_optics() const {
    SpeciesOptics s;
    s.name = name;
    s.mass = mass_u * codata().atomic_mass_unit;
    s.alpha_scalar = alpha_scalar_au;
    s.rho = rho;
    s.role = role;
    s.F = F;
    s.M_F = M_F;
    return s;
}

std::vector<SpeciesConfig> default_species() {
    return {
        {"Sr88", 87.9056122571, -470.0, 0.0, SpeciesRole::Clock, 0.0, 0.0},
        {"Al27 |3,-3>", 26.98153841, -340.0, -1.25, SpeciesRole::HeadUp, 3.0, -3.0},
        {"Al27 |2,-2>", 26.98153841, -340.0, 0.84, SpeciesRole::HeadDown, 2.0, -2.0},
    };
}

RunConfig parse_config(std::string_view text) {
    json root;
    bool blank = true;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    }
    if (!blank) {
        try {
            root = json::parse(text.begin(), text.end(), nullptr, true, true);
        } catch (const json::parse_error &e) {
            throw Error(ErrorCode::ConfigSyntax, std::string("malformed JSON: ") + e.what());
        }
    }
    return parse_json(root);
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json to_json(const RunConfig &config) {
    json root;
    json species = json::array();
    for (const auto &s : config.species) {
        species.push_back({{"name", s.name},
                           {"mass_u", s.mass_u},
                           {"alpha_scalar_au", s.alpha_scalar_au},
                           {"rho", s.rho},
                           {"role", std::string(to_string(s.role))},
                           {"F", s.F},
                           {"M_F", s.M_F}});
    }
    root["species"] = species;

    const auto &l = config.lattice;
    root["lattice"] = {{"lambda_m_nm", l.lambda_m_nm},
                       {"intensity_kW_cm2", optional_to_json(l.intensity_kW_cm2)},
                       {"delta", l.delta},
                       {"phi_rad", l.phi_rad},
                       {"transverse_intensity_kW_cm2",
                        optional_to_json(l.transverse_intensity_kW_cm2)}};

    const auto &p = config.protocol;
    root["protocol"] = {{"n_atoms", p.n_atoms},
                        {"ramsey_time_s", p.ramsey_time_s},
                        {"a_scatt_au", p.a_scatt_au},
                        {"transport_time_us", p.transport_time_us},
                        {"gate_time_us", optional_to_json(p.gate_time_us)},
                        {"pulse_time_us", p.pulse_time_us},
                        {"depth_factor", p.depth_factor}};

    const auto &n = config.noise;
    root["noise"] = {{"mode", std::string(to_string(n.mode))},
                     {"tau_scatter_clock_s", optional_to_json(n.tau_scatter_clock_s)},
                     {"tau_scatter_head_s", optional_to_json(n.tau_scatter_head_s)},
                     {"extra_loss_rate_per_s", n.extra_loss_rate_per_s}};

    const auto &r = config.run;
    root["run"] = {{"backend", std::string(to_string(r.backend))},
                   {"trajectories", r.trajectories},
                   {"seed", r.seed},
                   {"shots", r.shots},
                   {"delta_omega_rad_s", r.delta_omega_rad_s},
                   {"delta_omega_head_rad_s", r.delta_omega_head_rad_s},
                   {"detuning",
                    {{"min_rad_s", optional_to_json(r.detuning.min_rad_s)},
                     {"max_rad_s", optional_to_json(r.detuning.max_rad_s)},
                     {"points", r.detuning.points}}},
                   {"n_min", r.n_min},
                   {"n_max", r.n_max},
                   {"n_step", r.n_step},
                   {"dense_cap", r.dense_cap}};

    json axes = json::array();
    for (const auto &[key, values] : config.sweep.axes) {
        axes.push_back({{"path", key}, {"values", values}});
    }
    root["sweep"] = {{"axes", axes}};
    return root;
}

std::string serialize_config(const RunConfig &config) { return to_json(config).dump(2) + "\n"; }

RunConfig with_override(const RunConfig &config, std::string_view path, const json &value) {
    if (path == "sweep" || path.starts_with("sweep.")) {
        throw Error(ErrorCode::ConfigRange, std::string(path) + ": the sweep section cannot be overridden");
    }
    json root = to_json(config);
    json::json_pointer pointer;
    std::string segment;
    std::string dotted(path);
    std::istringstream parts(dotted);
    while (std::getline(parts, segment, '.')) {
        if (segment.empty()) {
            throw Error(ErrorCode::ConfigRange, "malformed parameter path '" + dotted + "'");
        }
        // species[1] style segments address array elements.
        if (auto open = segment.find('['); open != std::string::npos && segment.back() == ']') {
            pointer /= segment.substr(0, open);
            const std::string index = segment.substr(open + 1, segment.size() - open - 2);
            if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos) {
                throw Error(ErrorCode::ConfigRange, "malformed parameter path '" + dotted + "'");
            }
            pointer /= std::stoul(index);
        } else {
            pointer /= segment;
        }
    }
    if (!root.contains(pointer) || pointer.empty() || root.at(pointer).is_object()) {
        throw Error(ErrorCode::ConfigUnknownKey, dotted + ": not a configurable parameter");
    }
    root[pointer] = value;
    return parse_json(root);
}

std::string config_hash(const RunConfig &config) {
    const std::string canonical = to_json(config).dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

} // namespace ghzclock
