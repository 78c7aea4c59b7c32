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
 * Decoherence timescales, collisional gate durations and the timed
 * entanglement schedule.
 */
#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "lattice.hpp"

namespace ghzclock {

struct DecoherenceParams {
    double tau_scatter_clock = 0.0; // s, per clock atom
    double tau_scatter_head = 0.0;  // s
    double extra_loss_rate = 0.0;   // 1/s, aggregate inelastic-collision proxy

    void validate() const;

    /// Total rate of decohering events with n_atoms clock atoms present.
    [[nodiscard]] double total_rate(long n_atoms) const noexcept;
};

enum class StepKind { HadamardAll, HeadPulse, Transport, PhaseGate, FreeEvolution, Readout };

[[nodiscard]] std::string_view to_string(StepKind kind) noexcept;

struct ScheduleStep {
    StepKind kind = StepKind::HadamardAll;
    double duration = 0.0; // s
    std::optional<long> site;
};

struct ProtocolSchedule {
    std::vector<ScheduleStep> steps;
    double total_duration = 0.0; // s
    double ramsey_time = 0.0;    // s
    long n_atoms = 0;
};

inline constexpr double kDefaultTransportTime = 10e-6; // s

/// Photon-scattering lifetime of one trapped atom,
///   1/tau = eta (8 pi / 3) k^4 alpha_vol^2 I / (hbar omega),  eta = sqrt(E_R / depth) / 2,
/// where eta accounts for the wavefunction sitting at an intensity minimum.
/// Returns +inf for alpha = 0. Throws InvalidArgument when depth <= 0.
[[nodiscard]] double photon_scattering_time(const SpeciesOptics &species, double intensity,
                                            double depth, double lambda_m);

/// Mean-field shift of two atoms in overlapping 3-D harmonic ground states,
///   dE = (2 a / mbar) sqrt(hbar / pi) prod_i (mbar omega)_i^{1/2},
/// with (mbar omega)_i = m1 w1_i m2 w2_i / (m1 w1_i + m2 w2_i). Sign follows a.
[[nodiscard]] double interaction_energy(double a_scatt, double m1, double m2,
                                        const std::array<double, 3> &omegas1,
                                        const std::array<double, 3> &omegas2);

/// target_phase * hbar / |delta_E|. Throws NoInteraction when delta_E == 0.
[[nodiscard]] double phase_gate_duration(double delta_E, double target_phase = 3.141592653589793);

/// hadamard_all, head_pulse, N x (transport, phase_gate), hadamard_all,
/// free_evolution, hadamard_all, N x (transport, phase_gate), hadamard_all,
/// head_pulse, readout.
[[nodiscard]] ProtocolSchedule build_schedule(long n_atoms, double gate_time,
                                              double transport_time, double ramsey_time,
                                              double pulse_time = 0.0);

/// exp(-total_duration * total_rate(n_atoms)): every scattering event is
/// assumed to wipe out the fringe.
[[nodiscard]] double survival_probability(const ProtocolSchedule &schedule, long n_atoms,
                                          const DecoherenceParams &params);

} // namespace ghzclock
