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

#include "ghzclock/commands.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <system_error>

#include "ghzclock/error.hpp"
#include "ghzclock/random.hpp"
#include "ghzclock/register.hpp"
#include "ghzclock/trajectories.hpp"

#ifndef GHZCLOCK_VERSION
#define GHZCLOCK_VERSION "0.0.0"
#endif

namespace ghzclock {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

const SpeciesOptics *find_role(const std::vector<SpeciesOptics> &species, SpeciesRole role) {
    for (const auto &s : species) {
        if (s.role == role) return &s;
    }
    return nullptr;
}

std::size_t index_of(const std::vector<SpeciesOptics> &species, const SpeciesOptics *s) {
    return static_cast<std::size_t>(s - species.data());
}

LatticeConfig base_lattice(const RunConfig &config) {
    LatticeConfig l;
    l.lambda_m = config.lattice.lambda_m_nm * 1e-9;
    l.delta = config.lattice.delta;
    l.phi = config.lattice.phi_rad;
    return l;
}

std::vector<SpeciesOptics> species_optics(const RunConfig &config) {
    std::vector<SpeciesOptics> out;
    for (const auto &s : config.species) {
        out.push_back(s.to_optics());
        out.back().validate();
    }
    require(!out.empty(), ErrorCode::InvalidArgument, "no species configured");
    return out;
}

std::string_view noise_mode_name(NoiseMode mode) {
    switch (mode) {
    case NoiseMode::Computed: return "computed";
    case NoiseMode::Override: return "override";
    case NoiseMode::None: return "none";
    }
    return "unknown";
}

/// Slack of each transport constraint; positive means satisfied.
std::vector<std::pair<std::string, double>> constraint_slacks(double rho_up, double rho_down,
                                                             double delta) {
    return {{"rho_up > -1/delta", rho_up + 1.0 / delta},
            {"rho_up < -delta", -delta - rho_up},
            {"rho_down > delta", rho_down - delta},
            {"rho_down < 1/delta", 1.0 / delta - rho_down}};
}

json common_metadata(Command command, const RunConfig &config) {
    return {{"tool", "ghzclock"},
            {"version", GHZCLOCK_VERSION},
            {"command", std::string(to_string(command))},
            {"config_hash", config_hash(config)},
            {"seed", config.run.seed},
            {"backend", std::string(to_string(config.run.backend))},
            {"trajectories", config.run.trajectories},
            {"n_atoms", config.protocol.n_atoms},
            {"ramsey_time_s", config.protocol.ramsey_time_s},
            {"config", to_json(config)}};
}

json setup_metadata(const PhysicsSetup &s) {
    json out = {{"operating_intensity_kW_cm2", si_to_kw_per_cm2(s.lattice.intensity)},
                {"transverse_intensity_kW_cm2", si_to_kw_per_cm2(s.lattice.transverse_intensity)},
                {"required_intensity_kW_cm2", si_to_kw_per_cm2(s.required.intensity)},
                {"binding_species", s.required.binding_species},
                {"interaction_energy_J", s.interaction_energy},
                {"gate_time_s", s.gate_time},
                {"transport_time_s", s.transport_time},
                {"pulse_time_s", s.pulse_time}};
    // JSON has no infinity; a missing lifetime is written as null.
    const auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    out["tau_scatter_clock_s"] = finite_or_null(s.decoherence.tau_scatter_clock);
    out["tau_scatter_head_s"] = finite_or_null(s.decoherence.tau_scatter_head);
    out["extra_loss_rate_per_s"] = s.decoherence.extra_loss_rate;
    return out;
}

RegisterOptions register_options(const RunConfig &config) {
    RegisterOptions o;
    o.dense_cap = config.run.dense_cap;
    return o;
}

ProtocolSchedule schedule_of(const PhysicsSetup &s) {
    return build_schedule(s.n_atoms, s.gate_time, s.transport_time, s.ramsey_time, s.pulse_time);
}

// --- feasibility -----------------------------------------------------------

CommandResult run_feasibility(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Feasibility, config);
    result.table.columns = {"species",           "role",
                            "mass_kg",           "alpha_scalar_au",
                            "rho",               "recoil_energy_J",
                            "overlap_depth_J",   "overlap_depth_recoil",
                            "halfway_depth_J",   "halfway_depth_recoil",
                            "axial_omega_rad_s", "radial_omega_rad_s",
                            "scattering_time_s"};

    const auto species = species_optics(config);
    const auto *up = find_role(species, SpeciesRole::HeadUp);
    const auto *down = find_role(species, SpeciesRole::HeadDown);
    json report = {{"checked", up != nullptr && down != nullptr}};
    if (up != nullptr && down != nullptr) {
        const auto fr = transport_feasibility(up->rho, down->rho, config.lattice.delta);
        report["feasible"] = fr.feasible;
        report["margin"] = fr.margin;
        report["violated_constraints"] = fr.violated_constraints;
        json constraints = json::array();
        for (const auto &[name, slack] : constraint_slacks(up->rho, down->rho, config.lattice.delta)) {
            constraints.push_back({{"constraint", name}, {"slack", slack}, {"satisfied", slack > 0.0}});
        }
        report["constraints"] = constraints;
        if (!fr.feasible) {
            result.metadata["feasibility"] = report;
            result.status = ErrorCode::InfeasibleTransport;
            return result;
        }
    } else {
        report["feasible"] = true;
    }
    result.metadata["feasibility"] = report;

    const auto setup = derive_setup(config);
    for (std::size_t i = 0; i < setup.species.size(); ++i) {
        const auto &s = setup.species[i];
        const double er = setup.recoil_energies[i];
        result.table.add_row({s.name, std::string(to_string(s.role)), s.mass, s.alpha_scalar, s.rho,
                              er, setup.overlap_depths[i], setup.overlap_depths[i] / er,
                              setup.halfway_depths[i], setup.halfway_depths[i] / er,
                              setup.trap_frequencies[i].axial, setup.trap_frequencies[i].radial_1,
                              setup.scattering_times[i]});
    }
    result.metadata["setup"] = setup_metadata(setup);
    return result;
}

// --- schedule --------------------------------------------------------------

CommandResult run_schedule_command(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Schedule, config);
    const auto setup = derive_setup(config);
    const auto schedule = schedule_of(setup);

    result.table.columns = {"index", "kind", "site", "start_s", "duration_s"};
    double t = 0.0;
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto &step = schedule.steps[i];
        result.table.add_row({static_cast<std::int64_t>(i), std::string(to_string(step.kind)),
                              step.site ? Cell{static_cast<std::int64_t>(*step.site)} : Cell{std::string()},
                              t, step.duration});
        t += step.duration;
    }
    result.metadata["setup"] = setup_metadata(setup);
    result.metadata["total_duration_s"] = schedule.total_duration;
    result.metadata["total_rate_per_s"] = setup.decoherence.total_rate(setup.n_atoms);
    result.metadata["survival"] = survival_probability(schedule, setup.n_atoms, setup.decoherence);
    return result;
}

// --- simulate --------------------------------------------------------------

CommandResult run_simulate(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Simulate, config);
    const auto setup = derive_setup(config);
    const Detunings d{config.run.delta_omega_rad_s, config.run.delta_omega_head_rad_s};
    const double chi = ramsey_phase(setup.n_atoms, d, setup.ramsey_time);
    const auto options = register_options(config);
    const Backend backend = config.run.backend;

    result.table.columns = {"stage", "norm", "terms", "fidelity", "p_up"};
    ProtocolObserver observer;
    observer.on_checkpoint = [&](Stage stage, const RegisterState &state) {
        const auto reference = stage_reference(stage, setup.n_atoms, chi, backend, options);
        const auto terms = state.branch() != nullptr
                               ? static_cast<std::int64_t>(state.branch()->rank())
                               : static_cast<std::int64_t>(state.dense()->amplitudes().size());
        result.table.add_row({std::string(to_string(stage)), state.norm(), terms,
                              fidelity(state, reference), state.head_readout().p_up});
    };
    const auto final_state =
        run_protocol(setup.n_atoms, backend, d, setup.ramsey_time, options, observer);
    const double p_up = final_state.head_readout().p_up;

    const auto schedule = schedule_of(setup);
    const double survival = survival_probability(schedule, setup.n_atoms, setup.decoherence);
    json summary = {{"delta_omega_rad_s", d.clock},
                    {"delta_omega_head_rad_s", d.head},
                    {"chi_rad", chi},
                    {"p_up", p_up},
                    {"p_up_analytic", std::pow(std::sin(chi / 2.0), 2)},
                    {"survival", survival},
                    {"p_up_expected", survival * p_up + (1.0 - survival) / 2.0}};
    if (config.run.trajectories > 0) {
        const auto batch = omp::run_trajectories(setup.n_atoms, schedule, setup.decoherence, p_up,
                                                 config.run.seed, config.run.trajectories);
        summary["monte_carlo"] = {{"trajectories", batch.trajectories},
                                  {"scattered", batch.scattered},
                                  {"scattered_fraction", batch.scattered_fraction()},
                                  {"mean_p_up", batch.mean_p_up}};
    }
    result.metadata["setup"] = setup_metadata(setup);
    result.metadata["summary"] = summary;
    return result;
}

// --- scan ------------------------------------------------------------------

CommandResult run_scan(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Scan, config);
    const auto setup = derive_setup(config);
    const auto grid = detuning_grid(config);

    std::optional<ScanNoise> noise;
    long trajectories = 0;
    double survival = 1.0;
    if (config.noise.mode != NoiseMode::None) {
        noise = ScanNoise{setup.decoherence, setup.gate_time, setup.transport_time, setup.pulse_time};
        trajectories = config.run.trajectories;
        survival = survival_probability(schedule_of(setup), setup.n_atoms, setup.decoherence);
    }
    ScanOptions options;
    options.backend = config.run.backend;
    options.register_options = register_options(config);
    options.head_detuning = config.run.delta_omega_head_rad_s;

    const auto noiseless = fringe_scan(setup.n_atoms, setup.ramsey_time, grid, std::nullopt, 0,
                                       config.run.seed, options);
    const auto scan = noise ? fringe_scan(setup.n_atoms, setup.ramsey_time, grid, noise,
                                          trajectories, config.run.seed, options)
                            : noiseless;

    result.table.columns = {"delta_omega_rad_s", "chi_rad", "p_up", "p_up_noiseless",
                            "p_up_analytic", "p_up_expected"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double chi =
            ramsey_phase(setup.n_atoms, Detunings{grid[i], options.head_detuning}, setup.ramsey_time);
        const double p0 = noiseless.p_up[i];
        result.table.add_row({grid[i], chi, scan.p_up[i], p0, std::pow(std::sin(chi / 2.0), 2),
                              survival * p0 + (1.0 - survival) / 2.0});
    }

    json fit_json;
    if (grid.size() >= 4) {
        const auto fit = analyze_fringe(scan);
        fit_json = {{"contrast", fit.contrast},
                    {"fringe_period_rad_s", fit.fringe_period ? json(*fit.fringe_period) : json(nullptr)},
                    {"offset", fit.offset}};
        try {
            const auto p = precision_report(fit, setup.n_atoms, setup.ramsey_time, config.run.shots);
            fit_json["sigma_delta_omega_rad_s"] = p.sigma_delta_omega;
            fit_json["sql_sigma_rad_s"] = p.sql_sigma;
            fit_json["gain_over_sql"] = p.gain_over_sql;
        } catch (const Error &e) {
            fit_json["precision_error"] = std::string(error_code_name(e.code()));
        }
    }
    result.metadata["setup"] = setup_metadata(setup);
    result.metadata["noise_mode"] = std::string(noise_mode_name(config.noise.mode));
    result.metadata["survival"] = survival;
    result.metadata["fit"] = fit_json;
    return result;
}

// --- optimize --------------------------------------------------------------

CommandResult run_optimize(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Optimize, config);
    const auto setup = derive_setup(config);
    const OptimizeInputs inputs{setup.decoherence, setup.gate_time, setup.transport_time,
                                setup.pulse_time};
    const auto opt = optimize_atom_number(inputs, setup.ramsey_time, config.run.n_min,
                                          config.run.n_max, config.run.n_step);

    result.table.columns = {"n_atoms", "total_duration_s", "survival", "figure_of_merit",
                            "gain_over_sql"};
    for (const auto &p : opt.curve) {
        result.table.add_row({static_cast<std::int64_t>(p.n_atoms), p.total_duration, p.survival,
                              p.figure_of_merit, p.gain_over_sql});
    }
    result.metadata["setup"] = setup_metadata(setup);
    result.metadata["n_opt"] = opt.n_opt;
    return result;
}

// --- sweep -----------------------------------------------------------------

std::vector<Cell> sweep_point(const RunConfig &base, std::size_t point,
                              const std::vector<std::size_t> &choice) {
    std::vector<Cell> axis_cells;
    RunConfig config = base;
    std::string status = "ok";
    double required = kNaN, gate_time = kNaN, duration = kNaN, survival = kNaN, p_up = kNaN;
    double mc_fraction = kNaN, mc_mean = kNaN, gain = kNaN;
    long n_atoms = base.protocol.n_atoms;
    double ramsey = base.protocol.ramsey_time_s;

    for (std::size_t a = 0; a < base.sweep.axes.size(); ++a) {
        axis_cells.emplace_back(base.sweep.axes[a].second[choice[a]].dump());
    }
    try {
        for (std::size_t a = 0; a < base.sweep.axes.size(); ++a) {
            const auto &[path, values] = base.sweep.axes[a];
            config = with_override(config, path, values[choice[a]]);
        }
        n_atoms = config.protocol.n_atoms;
        ramsey = config.protocol.ramsey_time_s;
        const auto setup = derive_setup(config);
        const auto schedule = schedule_of(setup);
        required = si_to_kw_per_cm2(setup.required.intensity);
        gate_time = setup.gate_time;
        duration = schedule.total_duration;
        survival = survival_probability(schedule, setup.n_atoms, setup.decoherence);
        gain = survival * std::sqrt(static_cast<double>(setup.n_atoms));
        const Detunings d{config.run.delta_omega_rad_s, config.run.delta_omega_head_rad_s};
        p_up = run_protocol(setup.n_atoms, config.run.backend, d, setup.ramsey_time,
                            register_options(config))
                   .head_readout()
                   .p_up;
        if (config.run.trajectories > 0) {
            const auto batch = serial::run_trajectories(
                setup.n_atoms, schedule, setup.decoherence, p_up,
                stream_seed(config.run.seed, static_cast<std::uint64_t>(point)),
                config.run.trajectories);
            mc_fraction = batch.scattered_fraction();
            mc_mean = batch.mean_p_up;
        }
    } catch (const Error &e) {
        status = std::string(error_code_name(e.code()));
    } catch (const std::exception &) {
        status = std::string(error_code_name(ErrorCode::Internal));
    }

    std::vector<Cell> row;
    row.emplace_back(static_cast<std::int64_t>(point));
    for (auto &c : axis_cells) row.push_back(std::move(c));
    for (Cell c : std::vector<Cell>{status, static_cast<std::int64_t>(n_atoms), ramsey, required,
                                    gate_time, duration, survival, gain, p_up, mc_fraction, mc_mean}) {
        row.push_back(std::move(c));
    }
    return row;
}

CommandResult run_sweep(const RunConfig &config) {
    CommandResult result;
    result.metadata = common_metadata(Command::Sweep, config);
    const auto &axes = config.sweep.axes;

    result.table.columns = {"point"};
    std::size_t points = 1;
    for (const auto &[path, values] : axes) {
        require(!values.empty(), ErrorCode::ConfigRange, "sweep axis '" + path + "' has no values");
        result.table.columns.push_back(path);
        points *= values.size();
    }
    for (const char *c : {"status", "n_atoms", "ramsey_time_s", "required_intensity_kW_cm2",
                          "gate_time_s", "total_duration_s", "survival", "gain_over_sql", "p_up",
                          "mc_scattered_fraction", "mc_mean_p_up"}) {
        result.table.columns.emplace_back(c);
    }

    std::vector<std::vector<Cell>> rows(points);
    const auto count = static_cast<long>(points);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        // Mixed-radix decomposition, last axis fastest.
        std::vector<std::size_t> choice(axes.size());
        auto rest = static_cast<std::size_t>(i);
        for (std::size_t a = axes.size(); a-- > 0;) {
            choice[a] = rest % axes[a].second.size();
            rest /= axes[a].second.size();
        }
        rows[static_cast<std::size_t>(i)] = sweep_point(config, static_cast<std::size_t>(i), choice);
    }
    for (auto &row : rows) result.table.add_row(std::move(row));

    json axes_json = json::array();
    for (const auto &[path, values] : axes) axes_json.push_back({{"path", path}, {"values", values}});
    result.metadata["axes"] = axes_json;
    result.metadata["points"] = points;
    return result;
}

} // namespace

PhysicsSetup derive_setup(const RunConfig &config) {
    PhysicsSetup s;
    s.species = species_optics(config);
    s.n_atoms = config.protocol.n_atoms;
    s.ramsey_time = config.protocol.ramsey_time_s;
    require(s.n_atoms >= 1, ErrorCode::InvalidProtocolSize, "protocol.n_atoms must be >= 1");

    const auto *clock = find_role(s.species, SpeciesRole::Clock);
    const auto *head = find_role(s.species, SpeciesRole::HeadUp);
    require(clock != nullptr, ErrorCode::InvalidArgument, "no species with role clock");
    require(head != nullptr, ErrorCode::InvalidArgument, "no species with role head_up");
    if (const auto *down = find_role(s.species, SpeciesRole::HeadDown)) {
        s.feasibility = transport_feasibility(head->rho, down->rho, config.lattice.delta);
    }

    s.lattice = base_lattice(config);
    s.required = min_required_intensity(s.species, s.lattice, config.protocol.depth_factor);
    s.lattice.intensity = config.lattice.intensity_kW_cm2
                              ? kw_per_cm2_to_si(*config.lattice.intensity_kW_cm2)
                              : s.required.intensity;
    require(s.lattice.intensity > 0.0, ErrorCode::ConfigRange,
            "lattice intensity resolves to zero; set lattice.intensity_kW_cm2 or depth_factor > 0");
    s.lattice.transverse_intensity = config.lattice.transverse_intensity_kW_cm2
                                         ? kw_per_cm2_to_si(*config.lattice.transverse_intensity_kW_cm2)
                                         : s.lattice.intensity;
    s.lattice.validate();

    LatticeConfig overlap = s.lattice;
    overlap.phi = kOverlapPhase;
    LatticeConfig halfway = s.lattice;
    halfway.phi = kHalfwayPhase;
    for (const auto &sp : s.species) {
        s.recoil_energies.push_back(recoil_energy(sp.mass, s.lattice.lambda_m));
        s.overlap_depths.push_back(well_depth(overlap, sp));
        s.halfway_depths.push_back(well_depth(halfway, sp));
        s.trap_frequencies.push_back(trap_frequencies(overlap, sp));
        s.scattering_times.push_back(photon_scattering_time(sp, s.lattice.intensity,
                                                            s.overlap_depths.back(),
                                                            s.lattice.lambda_m));
    }

    const auto ci = index_of(s.species, clock);
    const auto hi = index_of(s.species, head);
    const double a0 = codata().bohr_radius;
    s.interaction_energy = interaction_energy(config.protocol.a_scatt_au * a0, clock->mass,
                                              head->mass, s.trap_frequencies[ci].as_array(),
                                              s.trap_frequencies[hi].as_array());
    s.gate_time = config.protocol.gate_time_us ? *config.protocol.gate_time_us * 1e-6
                                               : phase_gate_duration(s.interaction_energy);
    s.transport_time = config.protocol.transport_time_us * 1e-6;
    s.pulse_time = config.protocol.pulse_time_us * 1e-6;

    switch (config.noise.mode) {
    case NoiseMode::Computed:
        s.decoherence.tau_scatter_clock = s.scattering_times[ci];
        s.decoherence.tau_scatter_head = s.scattering_times[hi];
        s.decoherence.extra_loss_rate = config.noise.extra_loss_rate_per_s;
        break;
    case NoiseMode::Override:
        s.decoherence.tau_scatter_clock = *config.noise.tau_scatter_clock_s;
        s.decoherence.tau_scatter_head = *config.noise.tau_scatter_head_s;
        s.decoherence.extra_loss_rate = config.noise.extra_loss_rate_per_s;
        break;
    case NoiseMode::None:
        s.decoherence.tau_scatter_clock = kInf;
        s.decoherence.tau_scatter_head = kInf;
        s.decoherence.extra_loss_rate = 0.0;
        break;
    }
    s.decoherence.validate();
    return s;
}

std::string_view to_string(Command command) noexcept {
    switch (command) {
    case Command::Feasibility: return "feasibility";
    case Command::Schedule: return "schedule";
    case Command::Simulate: return "simulate";
    case Command::Scan: return "scan";
    case Command::Optimize: return "optimize";
    case Command::Sweep: return "sweep";
    }
    return "unknown";
}

Command command_from_string(std::string_view name) {
    for (auto c : {Command::Feasibility, Command::Schedule, Command::Simulate, Command::Scan,
                   Command::Optimize, Command::Sweep}) {
        if (to_string(c) == name) return c;
    }
    throw Error(ErrorCode::Usage, "unknown command '" + std::string(name) + "'");
}

std::vector<double> detuning_grid(const RunConfig &config) {
    const auto &spec = config.run.detuning;
    const long n = config.protocol.n_atoms;
    const double t = config.protocol.ramsey_time_s;
    require(n >= 1, ErrorCode::InvalidProtocolSize, "protocol.n_atoms must be >= 1");
    double span = 0.0;
    if (!spec.min_rad_s || !spec.max_rad_s) {
        require(t > 0.0, ErrorCode::InvalidArgument, "default detuning grid needs ramsey_time_s > 0");
        span = 2.0 * std::numbers::pi / (static_cast<double>(n) * t);
    }
    const double lo = spec.min_rad_s.value_or(-span);
    const double hi = spec.max_rad_s.value_or(span);
    require(hi >= lo, ErrorCode::ConfigRange, "run.detuning.max_rad_s must be >= min_rad_s");

    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    for (long i = 0; i < spec.points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            spec.points == 1 ? lo
                             : lo + (hi - lo) * static_cast<double>(i) /
                                        static_cast<double>(spec.points - 1);
    }
    return grid;
}

CommandResult execute(Command command, const RunConfig &config) {
    switch (command) {
    case Command::Feasibility: return run_feasibility(config);
    case Command::Schedule: return run_schedule_command(config);
    case Command::Simulate: return run_simulate(config);
    case Command::Scan: return run_scan(config);
    case Command::Optimize: return run_optimize(config);
    case Command::Sweep: return run_sweep(config);
    }
    throw Error(ErrorCode::Internal, "unhandled command");
}

namespace {

void report_error(std::ostream &err, ErrorCode code, std::string_view message) {
    err << "error: code=" << static_cast<int>(code) << " name=" << error_code_name(code)
        << " message=" << message << '\n';
}

} // namespace

int run_command(Command command, const RunConfig &config, const std::filesystem::path &out_dir,
                std::ostream &err) {
    try {
        auto result = execute(command, config);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        require(!ec, ErrorCode::Io, "cannot create '" + out_dir.string() + "': " + ec.message());
        const std::string name(to_string(command));
        result.metadata["status"] = std::string(error_code_name(result.status));
        write_table(result.table, out_dir / (name + ".csv"));
        write_metadata(result.metadata, out_dir / (name + ".meta.json"));
        if (result.status != ErrorCode::Ok) {
            report_error(err, result.status, "see " + (out_dir / (name + ".meta.json")).string());
        }
        return static_cast<int>(result.status);
    } catch (const Error &e) {
        report_error(err, e.code(), e.what());
        return static_cast<int>(e.code());
    } catch (const std::exception &e) {
        report_error(err, ErrorCode::Internal, e.what());
        return static_cast<int>(ErrorCode::Internal);
    }
}

} // namespace ghzclock
