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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kernels.hpp"

namespace ghzclock {

inline constexpr long kDefaultDenseCap = 14;

/// (|0><0| + |0><1| + |1><0| - |1><1|) / sqrt(2)
[[nodiscard]] Mat2 hadamard() noexcept;
[[nodiscard]] Mat2 identity2() noexcept;
/// Throws NonUnitary unless m m^dagger = I to 1e-12 elementwise.
void require_unitary(const Mat2 &m);

struct HeadProbabilities {
    double p_down = 0.0;
    double p_up = 0.0;
};

/// Full 2^(N+1) state vector of N clock qubits and the head qubit.
class DenseState {
  public:
    /// |0...0>|down>. Throws Capacity when n_atoms exceeds `cap`.
    static DenseState zero(long n_atoms, long cap = kDefaultDenseCap,
                           Parallelism parallelism = Parallelism::OpenMP);
    /// Wraps explicit amplitudes; size must be 2^(n_atoms+1).
    static DenseState from_amplitudes(long n_atoms, std::vector<Complex> amplitudes,
                                      Parallelism parallelism = Parallelism::OpenMP);

    [[nodiscard]] long n_atoms() const noexcept { return n_atoms_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Parallelism parallelism() const noexcept { return parallelism_; }
    void set_parallelism(Parallelism p) noexcept { parallelism_ = p; }

    void apply_clock_rotation(const Mat2 &m);
    void apply_head_rotation(const Mat2 &m);
    void apply_phase_gate(long site);
    void apply_free_evolution(double delta_omega, double delta_omega_head, double duration);

    [[nodiscard]] HeadProbabilities head_readout() const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] Complex inner_product(const DenseState &other) const;

  private:
    DenseState(long n_atoms, std::vector<Complex> amps, Parallelism parallelism)
        : n_atoms_(n_atoms), amps_(std::move(amps)), parallelism_(parallelism) {}

    long n_atoms_ = 0;
    std::vector<Complex> amps_;
    Parallelism parallelism_ = Parallelism::OpenMP;
};

} // namespace ghzclock
