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
 * Dense state-vector kernels.
 *
 * Amplitudes are indexed p + 2^N h, where p is the clock register read as a
 * binary number (clock qubit j is bit j) and h is the head qubit (0 = down,
 * 1 = up), so the head is bit N.
 *
 * `serial` is the reference implementation; `omp` is the OpenMP version the
 * simulator uses by default. Both must produce bit-identical amplitudes
 * (reductions excepted, which agree to rounding).
 */
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

namespace ghzclock {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

enum class Parallelism { Serial, OpenMP };

namespace kernels {

namespace serial {
void apply_single_qubit(std::span<Complex> amps, unsigned qubit, const Mat2 &m);
void apply_all_clock_qubits(std::span<Complex> amps, unsigned n_clock, const Mat2 &m);
/// Negates amplitudes with the head up and clock qubit `site` set.
void apply_head_controlled_z(std::span<Complex> amps, unsigned n_clock, unsigned site);
/// Multiplies by exp(i clock_phase k_p) exp(i head_phase h), k_p = popcount(p).
void apply_detuning_phase(std::span<Complex> amps, unsigned n_clock, double clock_phase,
                          double head_phase);
[[nodiscard]] double probability_bit_set(std::span<const Complex> amps, unsigned bit);
[[nodiscard]] double squared_norm(std::span<const Complex> amps);
} // namespace serial

namespace omp {
void apply_single_qubit(std::span<Complex> amps, unsigned qubit, const Mat2 &m);
void apply_all_clock_qubits(std::span<Complex> amps, unsigned n_clock, const Mat2 &m);
void apply_head_controlled_z(std::span<Complex> amps, unsigned n_clock, unsigned site);
void apply_detuning_phase(std::span<Complex> amps, unsigned n_clock, double clock_phase,
                          double head_phase);
[[nodiscard]] double probability_bit_set(std::span<const Complex> amps, unsigned bit);
[[nodiscard]] double squared_norm(std::span<const Complex> amps);
} // namespace omp

/// Number of OpenMP threads used by the omp kernels (1 without OpenMP).
[[nodiscard]] int max_threads() noexcept;
void set_threads(int n) noexcept;

} // namespace kernels
} // namespace ghzclock
