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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ghzclock/commands.hpp"
#include "ghzclock/error.hpp"

using namespace ghzclock;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "ghzclock_test_commands" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const std::filesystem::path &p) { return json::parse(slurp(p)); }

/// Runs the CLI and returns its exit status.
int cli(const std::string &args) {
    const std::string cmd = std::string(GHZCLOCK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::filesystem::path write_config(const std::filesystem::path &dir, const std::string &text) {
    const auto p = dir / "config.json";
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("physics setup on the default configuration") {
    const auto s = derive_setup(parse_config(""));
    CHECK_THAT(s.lattice.intensity, WithinRel(2.219808988365014e8, 1e-8));
    CHECK(s.lattice.transverse_intensity == s.lattice.intensity);
    CHECK(s.required.binding_species == "Al27 |3,-3>");
    REQUIRE(s.feasibility.has_value());
    CHECK(s.feasibility->feasible);
    CHECK_THAT(s.gate_time, WithinRel(1.758329893054207e-05, 1e-7));
    CHECK_THAT(s.decoherence.tau_scatter_clock, WithinRel(9.586129767868437, 1e-7));
    CHECK_THAT(s.decoherence.tau_scatter_head, WithinRel(7.157034647456133, 1e-7));
    CHECK(s.transport_time == Catch::Approx(10e-6));
    CHECK(s.ramsey_time == 1e-3);
}

TEST_CASE("config overrides feed the setup") {
    auto c = parse_config(R"({"lattice": {"intensity_kW_cm2": 44.0, "transverse_intensity_kW_cm2": 11.0},
                              "protocol": {"gate_time_us": 5.0},
                              "noise": {"mode": "override", "tau_scatter_clock_s": 3.0,
                                        "tau_scatter_head_s": 4.0, "extra_loss_rate_per_s": 0.5}})");
    const auto s = derive_setup(c);
    CHECK_THAT(s.lattice.intensity, WithinRel(4.4e8, 1e-15));
    CHECK_THAT(s.lattice.transverse_intensity, WithinRel(1.1e8, 1e-15));
    CHECK_THAT(s.gate_time, WithinRel(5e-6, 1e-15));
    CHECK(s.decoherence.tau_scatter_clock == 3.0);
    CHECK(s.decoherence.extra_loss_rate == 0.5);

    c = with_override(c, "noise.mode", "none");
    CHECK(derive_setup(c).decoherence.total_rate(1000) == 0.0);

    auto no_head = parse_config(R"({"species": [{"name": "Sr88", "mass_u": 87.9, "alpha_scalar_au": -470}]})");
    try {
        (void)derive_setup(no_head);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("feasibility command") {
    const auto r = execute(Command::Feasibility, parse_config(""));
    CHECK(r.status == ErrorCode::Ok);
    CHECK(r.metadata["feasibility"]["feasible"] == true);
    const double intensity = r.metadata["setup"]["required_intensity_kW_cm2"];
    CHECK(intensity > 10.0);
    CHECK(intensity < 40.0);
    CHECK(r.metadata["setup"]["binding_species"] == "Al27 |3,-3>");
    CHECK(r.table.rows.size() == 3);

    const auto bad = execute(Command::Feasibility, with_override(parse_config(""), "species[1].rho", -0.1));
    CHECK(bad.status == ErrorCode::InfeasibleTransport);
    CHECK(bad.metadata["feasibility"]["feasible"] == false);
    CHECK(bad.metadata["feasibility"]["violated_constraints"][0] == "rho_up < -delta");
}

TEST_CASE("schedule command") {
    const auto c = with_override(parse_config(""), "protocol.n_atoms", 4);
    const auto r = execute(Command::Schedule, c);
    CHECK(r.table.rows.size() == 4 * 4 + 8);
    const double survival = r.metadata["survival"];
    CHECK(survival > 0.99);
    CHECK(survival < 1.0);
}

TEST_CASE("simulate command") {
    auto c = parse_config(R"({"protocol": {"n_atoms": 6}, "run": {"delta_omega_rad_s": 100.0,
                              "backend": "dense", "trajectories": 200}})");
    const auto r = execute(Command::Simulate, c);
    REQUIRE(r.table.rows.size() == 6);
    for (const auto &row : r.table.rows) CHECK(std::get<double>(row[3]) >= 1.0 - 1e-10);
    const double chi = 6 * 100.0 * 1e-3;
    CHECK_THAT(r.metadata["summary"]["p_up"].get<double>(),
               WithinAbs(std::pow(std::sin(chi / 2.0), 2), 1e-12));
    CHECK(r.metadata["summary"]["monte_carlo"]["trajectories"] == 200);
}

TEST_CASE("scan command matches the analytic fringe") {
    const auto dir = scratch("scan");
    const auto c = parse_config(R"({"protocol": {"n_atoms": 3}, "noise": {"mode": "none"},
                                    "run": {"detuning": {"points": 61}}})");
    std::ostringstream err;
    REQUIRE(run_command(Command::Scan, c, dir, err) == 0);
    const auto csv = read_csv(dir / "scan.csv");
    REQUIRE(csv.rows.size() == 61);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double dw = csv.number(i, "delta_omega_rad_s");
        CHECK_THAT(csv.number(i, "p_up"), WithinAbs(std::pow(std::sin(3.0 * dw * 1e-3 / 2.0), 2), 1e-9));
    }
    const auto meta = read_json(dir / "scan.meta.json");
    CHECK_THAT(meta["fit"]["contrast"].get<double>(), WithinAbs(1.0, 1e-6));
    CHECK(meta["config_hash"] == config_hash(c));
    CHECK(meta["seed"] == c.run.seed);
    CHECK(meta.contains("version"));
}

TEST_CASE("optimize command records the Ramsey time") {
    const auto r = execute(Command::Optimize, parse_config(""));
    const long n_opt = r.metadata["n_opt"];
    CHECK(n_opt >= 100);
    CHECK(n_opt <= 10000);
    CHECK(r.metadata["ramsey_time_s"] == 1e-3);
    CHECK(r.table.rows.size() == 10000);
}

TEST_CASE("sweep command enumerates the grid with the last axis fastest") {
    const auto c = parse_config(R"({"protocol": {"n_atoms": 5}, "run": {"trajectories": 50},
        "sweep": {"axes": [{"path": "lattice.delta", "values": [0.25, 0.05]},
                           {"path": "protocol.n_atoms", "values": [2, 20, 0]}]}})");
    const auto r = execute(Command::Sweep, c);
    REQUIRE(r.table.rows.size() == 6);
    CHECK(std::get<std::string>(r.table.rows[1][1]) == "0.25");
    CHECK(std::get<std::string>(r.table.rows[1][2]) == "20");
    CHECK(std::get<std::string>(r.table.rows[3][1]) == "0.05");
    CHECK(std::get<std::string>(r.table.rows[3][2]) == "2");
    CHECK(std::get<std::string>(r.table.rows[0][3]) == "ok");
    CHECK(std::get<std::string>(r.table.rows[2][3]) == "invalid_protocol_size");
    // A weaker sigma+/sigma- imbalance keeps transport feasible but makes the
    // halfway clock well shallower, so the required intensity grows.
    CHECK(std::get<std::string>(r.table.rows[3][3]) == "ok");
    CHECK(std::get<double>(r.table.rows[3][6]) > std::get<double>(r.table.rows[0][6]));
}

TEST_CASE("sweep output is byte-identical across runs") {
    const auto c = parse_config(R"({"run": {"trajectories": 2000},
        "sweep": {"axes": [{"path": "protocol.n_atoms", "values": [10, 100, 1000]},
                           {"path": "protocol.ramsey_time_s", "values": [0.001, 0.1]}]}})");
    const auto a = scratch("sweep_a");
    const auto b = scratch("sweep_b");
    std::ostringstream err;
    REQUIRE(run_command(Command::Sweep, c, a, err) == 0);
    REQUIRE(run_command(Command::Sweep, c, b, err) == 0);
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
    CHECK(slurp(a / "sweep.meta.json") == slurp(b / "sweep.meta.json"));
}

TEST_CASE("run_command reports failures as one machine-readable line") {
    const auto dir = scratch("fail");
    std::ostringstream err;
    const auto c = with_override(parse_config(""), "species[1].rho", -0.1);
    CHECK(run_command(Command::Feasibility, c, dir, err) == 7);
    CHECK(err.str().starts_with("error: code=7 name=infeasible_transport"));
    CHECK(std::filesystem::exists(dir / "feasibility.meta.json"));

    std::ostringstream err2;
    CHECK(run_command(Command::Simulate, c, dir, err2) == 7);
    const std::string line = err2.str();
    CHECK(std::count(line.begin(), line.end(), '\n') == 1);
}

TEST_CASE("command names") {
    for (auto c : {Command::Feasibility, Command::Schedule, Command::Simulate, Command::Scan,
                   Command::Optimize, Command::Sweep}) {
        CHECK(command_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(command_from_string("plot"), Error);
}

TEST_CASE("CLI exit codes") {
    const auto dir = scratch("cli");
    const std::string out = " --out " + dir.string();
    CHECK(cli("feasibility" + out) == 0);
    CHECK(std::filesystem::exists(dir / "feasibility.csv"));
    CHECK(cli("--help") == 0);
    CHECK(cli("") == 2);
    CHECK(cli("plot") == 2);
    CHECK(cli("scan --backend mps" + out) == 2);
    CHECK(cli("scan --config " + (dir / "missing.json").string()) == 2);

    CHECK(cli("simulate --config " + write_config(dir, R"({"protocol": {"n_atoms": 0}})").string() + out) == 6);
    CHECK(cli("simulate --config " + write_config(dir, "{").string() + out) == 3);
    CHECK(cli("simulate --config " + write_config(dir, R"({"x": 1})").string() + out) == 4);
    CHECK(cli("simulate --config " + write_config(dir, R"({"lattice": {"delta": 1.5}})").string() + out) == 5);
    CHECK(cli("feasibility --config " +
              write_config(dir, R"({"lattice": {"delta": 0.0}})").string() + out) == 8);
    CHECK(cli("simulate --backend dense --config " +
              write_config(dir, R"({"protocol": {"n_atoms": 20}})").string() + out) == 10);
    CHECK(cli("schedule --config " +
              write_config(dir, R"({"protocol": {"a_scatt_au": 0}})").string() + out) == 13);
    CHECK(cli("scan --config " +
              write_config(dir, R"({"noise": {"mode": "none"}, "run": {"detuning": {"min_rad_s": 5, "max_rad_s": 5, "points": 9}}})").string() + out) == 0);
    CHECK(cli("feasibility --config " +
              write_config(dir, R"({"species": [{"name": "X", "mass_u": 88, "alpha_scalar_au": 0},
                                               {"name": "H", "mass_u": 27, "alpha_scalar_au": -340,
                                                "rho": -1.25, "role": "head_up", "F": 3, "M_F": -3}]})").string() +
              out) == 9);
    CHECK(cli("schedule --out /dev/null/sub") == 15);
    CHECK(cli("schedule --seed 5 --trajectories 10 --jobs 2" + out) == 0);
    CHECK(read_json(dir / "schedule.meta.json")["seed"] == 5);
}
