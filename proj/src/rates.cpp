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

#include "ghzclock/rates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ghzclock/error.hpp"

namespace ghzclock {

void DecoherenceParams::validate() const {
    require(tau_scatter_clock > 0.0 && tau_scatter_head > 0.0, ErrorCode::ConfigRange,
            "scattering lifetimes must be positive");
    require(extra_loss_rate >= 0.0, ErrorCode::ConfigRange,
            "extra loss rate must be non-negative");
}

double DecoherenceParams::total_rate(long n_atoms) const noexcept {
    return static_cast<double>(n_atoms) / tau_scatter_clock + 1.0 / tau_scatter_head +
           extra_loss_rate;
}

std::string_view to_string(StepKind kind) noexcept {
    switch (kind) {
    case StepKind::HadamardAll: return "hadamard_all";
    case StepKind::HeadPulse: return "head_pulse";
    case StepKind::Transport: return "transport";
    case StepKind::PhaseGate: return "phase_gate";
    case StepKind::FreeEvolution: return "free_evolution";
    case StepKind::Readout: return "readout";
    }
    return "readout";
}

double photon_scattering_time(const SpeciesOptics &species, double intensity, double depth,
                              double lambda_m) {
    require(depth > 0.0, ErrorCode::InvalidArgument, "scattering time needs a positive depth");
    require(intensity >= 0.0 && lambda_m > 0.0, ErrorCode::InvalidArgument,
            "scattering time needs non-negative intensity and positive wavelength");
    const auto &k = codata();
    const double alpha_volume =
        species.alpha_scalar * k.length_au_in_si * k.length_au_in_si * k.length_au_in_si;
    const double wavenumber = 2.0 * std::numbers::pi / lambda_m;
    const double photon_energy = k.planck_reduced * wavenumber * k.speed_of_light;
    const double cross_section = 8.0 * std::numbers::pi / 3.0 * std::pow(wavenumber, 4) *
                                 alpha_volume * alpha_volume;
    const double eta = 0.5 * std::sqrt(recoil_energy(species.mass, lambda_m) / depth);
    const double rate = eta * cross_section * intensity / photon_energy;
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

double interaction_energy(double a_scatt, double m1, double m2,
                          const std::array<double, 3> &omegas1,
                          const std::array<double, 3> &omegas2) {
    require(m1 > 0.0 && m2 > 0.0, ErrorCode::InvalidArgument, "masses must be positive");
    const double reduced_mass = m1 * m2 / (m1 + m2);
    double product = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        require(omegas1[i] > 0.0 && omegas2[i] > 0.0, ErrorCode::InvalidArgument,
                "trap frequencies must be positive");
        const double p1 = m1 * omegas1[i];
        const double p2 = m2 * omegas2[i];
        product *= std::sqrt(p1 * p2 / (p1 + p2));
    }
    return 2.0 * a_scatt / reduced_mass *
           std::sqrt(codata().planck_reduced / std::numbers::pi) * product;
}

double phase_gate_duration(double delta_E, double target_phase) {
    require(delta_E != 0.0, ErrorCode::NoInteraction,
            "zero interaction energy: the phase gate never completes");
    require(target_phase >= 0.0, ErrorCode::InvalidArgument, "target phase must be non-negative");
    return target_phase * codata().planck_reduced / std::abs(delta_E);
}

ProtocolSchedule build_schedule(long n_atoms, double gate_time, double transport_time,
                                double ramsey_time, double pulse_time) {
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "protocol needs at least one clock atom");
    require(gate_time >= 0.0 && transport_time >= 0.0 && ramsey_time >= 0.0 && pulse_time >= 0.0,
            ErrorCode::InvalidArgument, "schedule durations must be non-negative");

    ProtocolSchedule schedule;
    schedule.n_atoms = n_atoms;
    schedule.ramsey_time = ramsey_time;
    auto &steps = schedule.steps;
    steps.reserve(static_cast<std::size_t>(4 * n_atoms + 9));

    auto entangle_sweep = [&] {
        for (long site = 0; site < n_atoms; ++site) {
            steps.push_back({StepKind::Transport, transport_time, site});
            steps.push_back({StepKind::PhaseGate, gate_time, site});
        }
    };

    steps.push_back({StepKind::HadamardAll, pulse_time, std::nullopt});
    steps.push_back({StepKind::HeadPulse, pulse_time, std::nullopt});
    entangle_sweep();
    steps.push_back({StepKind::HadamardAll, pulse_time, std::nullopt});
    steps.push_back({StepKind::FreeEvolution, ramsey_time, std::nullopt});
    steps.push_back({StepKind::HadamardAll, pulse_time, std::nullopt});
    entangle_sweep();
    steps.push_back({StepKind::HadamardAll, pulse_time, std::nullopt});
    steps.push_back({StepKind::HeadPulse, pulse_time, std::nullopt});
    steps.push_back({StepKind::Readout, 0.0, std::nullopt});

    for (const auto &step : steps) {
        schedule.total_duration += step.duration;
    }
    return schedule;
}

double survival_probability(const ProtocolSchedule &schedule, long n_atoms,
                            const DecoherenceParams &params) {
    if (schedule.total_duration == 0.0) {
        return 1.0;
    }
    return std::exp(-schedule.total_duration * params.total_rate(n_atoms));
}

} // namespace ghzclock
