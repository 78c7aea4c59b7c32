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
 * Command implementations shared by the CLI and the tests.
 *
 * Each command writes `<out>/<command>.csv` and `<out>/<command>.meta.json`.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "lattice.hpp"
#include "rates.hpp"
#include "table.hpp"

namespace ghzclock {

/// Config translated to SI with every derived quantity resolved.
struct PhysicsSetup {
    std::vector<SpeciesOptics> species;
    LatticeConfig lattice; // intensity and transverse intensity resolved
    RequiredIntensity required;
    std::optional<FeasibilityReport> feasibility; // only with both head states
    std::vector<double> overlap_depths;           // J, per species at phi = 0
    std::vector<double> halfway_depths;           // J, per species at phi = pi/2
    std::vector<double> recoil_energies;          // J
    std::vector<TrapFrequencies> trap_frequencies; // at phi = 0
    std::vector<double> scattering_times;          // s, at the operating intensity
    double interaction_energy = 0.0; // J, clock + head_up at overlap
    double gate_time = 0.0;          // s
    double transport_time = 0.0;     // s
    double pulse_time = 0.0;         // s
    DecoherenceParams decoherence;
    long n_atoms = 0;
    double ramsey_time = 0.0;
};

/// Throws InvalidArgument when no clock or no head_up species is configured
/// and the physics errors of the underlying operations otherwise.
[[nodiscard]] PhysicsSetup derive_setup(const RunConfig &config);

enum class Command { Feasibility, Schedule, Simulate, Scan, Optimize, Sweep };

[[nodiscard]] std::string_view to_string(Command command) noexcept;
[[nodiscard]] Command command_from_string(std::string_view name);

struct CommandResult {
    Table table;
    nlohmann::json metadata;
    ErrorCode status = ErrorCode::Ok; // non-Ok when the outputs record a failure
};

/// Computes the outputs of `command` without touching the filesystem.
[[nodiscard]] CommandResult execute(Command command, const RunConfig &config);

/// execute() plus file output. Returns the process exit status; failures are
/// reported on `err` as a single line
///   error: code=<n> name=<name> message=<text>
int run_command(Command command, const RunConfig &config, const std::filesystem::path &out_dir,
                std::ostream &err);

/// Detuning grid described by the config (null bounds: two fringes).
[[nodiscard]] std::vector<double> detuning_grid(const RunConfig &config);

} // namespace ghzclock
