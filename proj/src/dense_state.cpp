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

#include "ghzclock/dense_state.hpp"

#include <cmath>
#include <string>

#include "ghzclock/error.hpp"

namespace ghzclock {

Mat2 hadamard() noexcept {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex{s, 0.0}, Complex{s, 0.0}, Complex{s, 0.0}, Complex{-s, 0.0}};
}

Mat2 identity2() noexcept { return {Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}; }

void require_unitary(const Mat2 &m) {
    // (m m^dagger)_{ij} = sum_k m_ik conj(m_jk)
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex entry = m[2 * i] * std::conj(m[2 * j]) +
                                  m[2 * i + 1] * std::conj(m[2 * j + 1]);
            const Complex expected = i == j ? Complex{1.0} : Complex{0.0};
            require(std::abs(entry - expected) <= 1e-12, ErrorCode::NonUnitary,
                    "gate matrix is not unitary");
        }
    }
}

DenseState DenseState::zero(long n_atoms, long cap, Parallelism parallelism) {
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "register needs at least one clock atom");
    require(n_atoms <= cap && n_atoms <= 40, ErrorCode::Capacity,
            "dense backend holds at most " + std::to_string(cap) + " clock atoms, requested " +
                std::to_string(n_atoms));
    std::vector<Complex> amps(std::size_t{1} << (n_atoms + 1));
    amps[0] = 1.0;
    return DenseState(n_atoms, std::move(amps), parallelism);
}

DenseState DenseState::from_amplitudes(long n_atoms, std::vector<Complex> amplitudes,
                                       Parallelism parallelism) {
    require(n_atoms >= 1 && n_atoms <= 40, ErrorCode::InvalidProtocolSize,
            "invalid clock register size");
    require(amplitudes.size() == (std::size_t{1} << (n_atoms + 1)), ErrorCode::InvalidArgument,
            "amplitude count does not match 2^(N+1)");
    return DenseState(n_atoms, std::move(amplitudes), parallelism);
}

void DenseState::apply_clock_rotation(const Mat2 &m) {
    require_unitary(m);
    const auto n = static_cast<unsigned>(n_atoms_);
    if (parallelism_ == Parallelism::OpenMP) {
        kernels::omp::apply_all_clock_qubits(amps_, n, m);
    } else {
        kernels::serial::apply_all_clock_qubits(amps_, n, m);
    }
}

void DenseState::apply_head_rotation(const Mat2 &m) {
    require_unitary(m);
    const auto n = static_cast<unsigned>(n_atoms_);
    if (parallelism_ == Parallelism::OpenMP) {
        kernels::omp::apply_single_qubit(amps_, n, m);
    } else {
        kernels::serial::apply_single_qubit(amps_, n, m);
    }
}

void DenseState::apply_phase_gate(long site) {
    require(site >= 0 && site < n_atoms_, ErrorCode::InvalidArgument,
            "phase gate site " + std::to_string(site) + " outside register");
    const auto n = static_cast<unsigned>(n_atoms_);
    const auto s = static_cast<unsigned>(site);
    if (parallelism_ == Parallelism::OpenMP) {
        kernels::omp::apply_head_controlled_z(amps_, n, s);
    } else {
        kernels::serial::apply_head_controlled_z(amps_, n, s);
    }
}

void DenseState::apply_free_evolution(double delta_omega, double delta_omega_head,
                                      double duration) {
    require(duration >= 0.0, ErrorCode::InvalidArgument, "free evolution time must be >= 0");
    const auto n = static_cast<unsigned>(n_atoms_);
    const double clock_phase = delta_omega * duration;
    const double head_phase = delta_omega_head * duration;
    if (parallelism_ == Parallelism::OpenMP) {
        kernels::omp::apply_detuning_phase(amps_, n, clock_phase, head_phase);
    } else {
        kernels::serial::apply_detuning_phase(amps_, n, clock_phase, head_phase);
    }
}

HeadProbabilities DenseState::head_readout() const {
    const auto head_bit = static_cast<unsigned>(n_atoms_);
    const double p_up = parallelism_ == Parallelism::OpenMP
                            ? kernels::omp::probability_bit_set(amps_, head_bit)
                            : kernels::serial::probability_bit_set(amps_, head_bit);
    const double total = norm();
    return {(total * total - p_up), p_up};
}

double DenseState::norm() const {
    const double s = parallelism_ == Parallelism::OpenMP ? kernels::omp::squared_norm(amps_)
                                                         : kernels::serial::squared_norm(amps_);
    return std::sqrt(s);
}

Complex DenseState::inner_product(const DenseState &other) const {
    require(other.n_atoms_ == n_atoms_, ErrorCode::InvalidArgument,
            "inner product of registers with different sizes");
    Complex s{0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

} // namespace ghzclock
