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

// Command-line front end. Exit status is the ErrorCode of the failure, 0 on
// success; CLI usage errors exit with 2.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ghzclock/commands.hpp"
#include "ghzclock/config.hpp"
#include "ghzclock/error.hpp"
#include "ghzclock/kernels.hpp"

#ifndef GHZCLOCK_VERSION
#define GHZCLOCK_VERSION "0.0.0"
#endif

namespace {

struct Flags {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> backend;
    std::optional<long> trajectories;
    std::optional<int> jobs;
};

} // namespace

int main(int argc, char **argv) {
    using namespace ghzclock;

    CLI::App app{"Entangled lattice clock simulator", "ghzclock"};
    app.set_version_flag("--version", GHZCLOCK_VERSION);
    app.require_subcommand(1);

    Flags flags;
    app.add_option("--config", flags.config, "JSON run configuration (defaults if omitted)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", flags.out, "output directory")->capture_default_str();
    app.add_option("--seed", flags.seed, "override run.seed");
    app.add_option("--backend", flags.backend, "override run.backend")
        ->check(CLI::IsMember({"dense", "branch"}));
    app.add_option("--trajectories", flags.trajectories, "override run.trajectories")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--jobs", flags.jobs, "OpenMP threads")->check(CLI::PositiveNumber);

    const std::pair<Command, const char *> commands[] = {
        {Command::Feasibility, "transport feasibility, required intensity, depths, frequencies"},
        {Command::Schedule, "timed entanglement schedule and survival"},
        {Command::Simulate, "noiseless protocol checkpoints plus Monte Carlo summary"},
        {Command::Scan, "Ramsey fringe over the detuning grid"},
        {Command::Optimize, "survival-weighted gain versus atom number"},
        {Command::Sweep, "Cartesian parameter sweep from the sweep section"},
    };
    for (const auto &[command, help] : commands) {
        app.add_subcommand(std::string(to_string(command)), help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : static_cast<int>(ErrorCode::Usage);
    }

    RunConfig config;
    try {
        config = flags.config.empty() ? parse_config("") : load_config(flags.config);
        if (flags.seed) config = with_override(config, "run.seed", *flags.seed);
        if (flags.backend) config = with_override(config, "run.backend", *flags.backend);
        if (flags.trajectories) config = with_override(config, "run.trajectories", *flags.trajectories);
    } catch (const Error &e) {
        std::cerr << "error: code=" << static_cast<int>(e.code())
                  << " name=" << error_code_name(e.code()) << " message=" << e.what() << '\n';
        return static_cast<int>(e.code());
    }
    if (flags.jobs) kernels::set_threads(*flags.jobs);

    const auto *sub = app.get_subcommands().front();
    const Command command = command_from_string(sub->get_name());
    const int status = run_command(command, config, flags.out, std::cerr);
    if (status == 0) {
        std::cout << "wrote " << (std::filesystem::path(flags.out) / sub->get_name()).string()
                  << ".csv\n";
    }
    return status;
}
