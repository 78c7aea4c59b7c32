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

/**
 * @file
 * Run configuration: a strict JSON document in human-scale units.
 *
 * Unit suffixes are part of every key name (lambda_m_nm, intensity_kW_cm2,
 * transport_time_us, ...). Values are converted to SI only when the physics
 * layer is set up (see commands.hpp). Unknown keys are errors; missing keys
 * take the defaults below, which describe Sr-88 clock atoms with an Al-27
 * head atom in the 389.9 nm blue magic lattice.
 *
 * A `null` intensity means "operate at the minimum intensity that keeps
 * every species depth_factor recoil energies deep"; a `null` transverse
 * intensity means "same as the transport lattice".
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lattice.hpp"
#include "register.hpp"

namespace ghzclock {

struct SpeciesConfig {
    std::string name;
    double mass_u = 0.0;
    double alpha_scalar_au = 0.0;
    double rho = 0.0;
    SpeciesRole role = SpeciesRole::Clock;
    double F = 0.0;
    double M_F = 0.0;

    [[nodiscard]] SpeciesOptics to_optics() const;
    bool operator==(const SpeciesConfig &) const = default;
};

struct LatticeSection {
    double lambda_m_nm = 389.9;
    std::optional<double> intensity_kW_cm2;
    double delta = kDefaultDelta;
    double phi_rad = 0.0;
    std::optional<double> transverse_intensity_kW_cm2;
    bool operator==(const LatticeSection &) const = default;
};

struct ProtocolSection {
    long n_atoms = 10;
    double ramsey_time_s = 1e-3;
    double a_scatt_au = 100.0;
    double transport_time_us = 10.0;
    std::optional<double> gate_time_us; // null: derived from the interaction energy
    double pulse_time_us = 0.0;
    double depth_factor = 5.0;
    bool operator==(const ProtocolSection &) const = default;
};

enum class NoiseMode { Computed, Override, None };

struct NoiseSection {
    NoiseMode mode = NoiseMode::Computed;
    std::optional<double> tau_scatter_clock_s; // used when mode = override
    std::optional<double> tau_scatter_head_s;
    double extra_loss_rate_per_s = 0.0;
    bool operator==(const NoiseSection &) const = default;
};

struct DetuningGridSpec {
    std::optional<double> min_rad_s; // null: -2 pi / (N T), two fringes
    std::optional<double> max_rad_s; // null: +2 pi / (N T)
    long points = 101;
    bool operator==(const DetuningGridSpec &) const = default;
};

struct RunSection {
    Backend backend = Backend::Branch;
    long trajectories = 1000;
    std::uint64_t seed = 20100101;
    long shots = 1;
    double delta_omega_rad_s = 0.0;      // detuning for `simulate`
    double delta_omega_head_rad_s = 0.0; // microwave detuning for all runs
    DetuningGridSpec detuning;
    long n_min = 1;
    long n_max = 10000;
    long n_step = 1;
    long dense_cap = kDefaultDenseCap;
    bool operator==(const RunSection &) const = default;
};

/// Parameter grid for `sweep`: dotted config paths mapped to value lists.
/// The Cartesian product is enumerated with the last axis varying fastest.
struct SweepSection {
    std::vector<std::pair<std::string, std::vector<nlohmann::json>>> axes;
    bool operator==(const SweepSection &) const = default;
};

struct RunConfig {
    std::vector<SpeciesConfig> species;
    LatticeSection lattice;
    ProtocolSection protocol;
    NoiseSection noise;
    RunSection run;
    SweepSection sweep;
    bool operator==(const RunConfig &) const = default;
};

[[nodiscard]] std::vector<SpeciesConfig> default_species();

/// Parses and validates. Errors carry ConfigSyntax, ConfigUnknownKey,
/// ConfigRange or InvalidProtocolSize and name the offending field path.
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path &path);

[[nodiscard]] nlohmann::json to_json(const RunConfig &config);
[[nodiscard]] std::string serialize_config(const RunConfig &config);

/// Returns a copy with the dotted path (e.g. "lattice.delta") set to `value`,
/// re-validated through the parser.
[[nodiscard]] RunConfig with_override(const RunConfig &config, std::string_view path,
                                      const nlohmann::json &value);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig &config);

} // namespace ghzclock
