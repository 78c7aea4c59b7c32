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
 * Backend-agnostic register and the gate-level clock protocol.
 *
 * All gates are in the rotating frame: pulses are ideal Hadamards and free
 * evolution is a pure detuning phase, exp(i dw T) on each clock |1> and
 * exp(i dw' T) on the head |up>.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "branch_state.hpp"
#include "dense_state.hpp"
#include "rates.hpp"

namespace ghzclock {

enum class Backend { Dense, Branch };

[[nodiscard]] std::string_view to_string(Backend backend) noexcept;
[[nodiscard]] Backend backend_from_string(std::string_view name);

struct RegisterOptions {
    long dense_cap = kDefaultDenseCap;
    std::size_t rank_bound = kDefaultRankBound;
    Parallelism parallelism = Parallelism::OpenMP;
};

class RegisterState {
  public:
    explicit RegisterState(DenseState s) : impl_(std::move(s)) {}
    explicit RegisterState(BranchProductState s) : impl_(std::move(s)) {}

    [[nodiscard]] Backend backend() const noexcept;
    [[nodiscard]] long n_atoms() const noexcept;

    void apply_clock_rotation(const Mat2 &m);
    void apply_head_rotation(const Mat2 &m);
    void apply_phase_gate(long site);
    void apply_free_evolution(double delta_omega, double delta_omega_head, double duration);

    [[nodiscard]] HeadProbabilities head_readout() const;
    [[nodiscard]] double norm() const;
    /// <this|other>; both states must use the same backend.
    [[nodiscard]] Complex inner_product(const RegisterState &other) const;
    /// Dense amplitudes (expanding a branch state, so small N only).
    [[nodiscard]] std::vector<Complex> to_amplitudes() const;

    [[nodiscard]] const DenseState *dense() const noexcept { return std::get_if<DenseState>(&impl_); }
    [[nodiscard]] const BranchProductState *branch() const noexcept {
        return std::get_if<BranchProductState>(&impl_);
    }

  private:
    std::variant<DenseState, BranchProductState> impl_;
};

/// |0...0>|down> on the requested backend.
[[nodiscard]] RegisterState init_register(long n_atoms, Backend backend,
                                          const RegisterOptions &options = {});

/// |<a|b>|^2 / (<a|a><b|b>)
[[nodiscard]] double fidelity(const RegisterState &a, const RegisterState &b);

/// (|0...0>|down> + |1...1>|up>) / sqrt(2)
[[nodiscard]] RegisterState ghz_reference(long n_atoms, Backend backend,
                                          const RegisterOptions &options = {});
/// |0...0> (cos(chi/2)|down> - i sin(chi/2)|up>)
[[nodiscard]] RegisterState final_reference(long n_atoms, double chi, Backend backend,
                                            const RegisterOptions &options = {});

struct Detunings {
    double clock = 0.0; // delta omega, rad/s
    double head = 0.0;  // delta omega', rad/s
};

/// chi = (N dw + dw') T
[[nodiscard]] double ramsey_phase(long n_atoms, const Detunings &d, double ramsey_time) noexcept;

enum class Stage {
    Superposed,   // after the opening Hadamards on clocks and head
    Entangled,    // after the first sweep of phase gates
    Ghz,          // after the first generalized pi/2 pulse
    FreeEvolved,  // after the Ramsey dark time
    Disentangled, // after the second sweep of phase gates
    Final,        // after the closing Hadamards
};

[[nodiscard]] std::string_view to_string(Stage stage) noexcept;

/// Analytic state expected at each checkpoint of the noiseless protocol, for
/// Ramsey phase chi (global phase not fixed):
///   superposed    |+>^N |+>
///   entangled     (|+>^N|down> + |->^N|up>) / sqrt(2)
///   ghz           (|0>^N|down> + |1>^N|up>) / sqrt(2)
///   free_evolved  (|0>^N|down> + e^{i chi} |1>^N|up>) / sqrt(2)
///   disentangled  |+>^N (|down> + e^{i chi}|up>) / sqrt(2)
///   final         |0>^N (cos(chi/2)|down> - i sin(chi/2)|up>)
[[nodiscard]] RegisterState stage_reference(Stage stage, long n_atoms, double chi,
                                            Backend backend, const RegisterOptions &options = {});

struct ProtocolObserver {
    std::function<void(Stage, const RegisterState &)> on_checkpoint;
    std::function<void(const ScheduleStep &, const RegisterState &)> on_step;
};

/// Executes the gate content of `schedule` on `state`. Transport and readout
/// steps carry no unitary; durations are irrelevant for the noiseless run.
void run_schedule(RegisterState &state, const ProtocolSchedule &schedule,
                  const Detunings &detunings, const ProtocolObserver &observer = {});

/// Noiseless end-to-end protocol with Ramsey time `ramsey_time`.
[[nodiscard]] RegisterState run_protocol(long n_atoms, Backend backend, const Detunings &detunings,
                                         double ramsey_time, const RegisterOptions &options = {},
                                         const ProtocolObserver &observer = {});

// Randomized differential testing between the backends.

struct ClockRotationGate {
    Mat2 matrix;
};
struct HeadRotationGate {
    Mat2 matrix;
};
struct PhaseGate {
    long site = 0;
};
struct FreeEvolutionGate {
    Detunings detunings;
    double duration = 0.0;
};
using Gate = std::variant<ClockRotationGate, HeadRotationGate, PhaseGate, FreeEvolutionGate>;

void apply_gate(RegisterState &state, const Gate &gate);

/// Haar-random 2x2 unitary.
[[nodiscard]] Mat2 random_unitary(std::uint64_t seed);

/// `length` gates drawn uniformly from the four kinds, deterministic in seed.
[[nodiscard]] std::vector<Gate> random_gate_sequence(long n_atoms, std::size_t length,
                                                     std::uint64_t seed);

/// Runs `gates` from |0...0>|down> on both backends and returns the largest
/// amplitude difference after aligning global phase. n_atoms <= 12.
[[nodiscard]] double backend_crosscheck(long n_atoms, const std::vector<Gate> &gates);

} // namespace ghzclock
