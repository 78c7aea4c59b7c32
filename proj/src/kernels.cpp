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

#include "ghzclock/kernels.hpp"

#include <bit>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghzclock::kernels {

namespace {

Complex detuning_factor(double clock_phase, double head_phase, unsigned excitations,
                        unsigned head) {
    return std::polar(1.0, clock_phase * excitations + (head != 0 ? head_phase : 0.0));
}

} // namespace

// Serial reference: visits every index and tests bits directly.
namespace serial {

void apply_single_qubit(std::span<Complex> amps, unsigned qubit, const Mat2 &m) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_all_clock_qubits(std::span<Complex> amps, unsigned n_clock, const Mat2 &m) {
    for (unsigned q = 0; q < n_clock; ++q) {
        apply_single_qubit(amps, q, m);
    }
}

void apply_head_controlled_z(std::span<Complex> amps, unsigned n_clock, unsigned site) {
    const std::uint64_t head = std::uint64_t{1} << n_clock;
    const std::uint64_t target = std::uint64_t{1} << site;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & head) != 0 && (i & target) != 0) {
            amps[i] = -amps[i];
        }
    }
}

void apply_detuning_phase(std::span<Complex> amps, unsigned n_clock, double clock_phase,
                          double head_phase) {
    const std::uint64_t clock_mask = (std::uint64_t{1} << n_clock) - 1;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const auto k = static_cast<unsigned>(std::popcount(i & clock_mask));
        amps[i] *= detuning_factor(clock_phase, head_phase, k,
                                   static_cast<unsigned>(i >> n_clock));
    }
}

double probability_bit_set(std::span<const Complex> amps, unsigned bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

double squared_norm(std::span<const Complex> amps) {
    double s = 0.0;
    for (const auto &a : amps) {
        s += std::norm(a);
    }
    return s;
}

} // namespace serial

// OpenMP: loops run over the pairs/quarters directly by inserting zero bits.
namespace omp {

namespace {

inline std::int64_t insert_zero_bit(std::int64_t i, unsigned bit) {
    const std::int64_t low = i & ((std::int64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

} // namespace

void apply_single_qubit(std::span<Complex> amps, unsigned qubit, const Mat2 &m) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::int64_t bit = std::int64_t{1} << qubit;
    Complex *data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::int64_t i0 = insert_zero_bit(i, qubit);
        const std::int64_t i1 = i0 | bit;
        const Complex a0 = data[i0];
        const Complex a1 = data[i1];
        data[i0] = m[0] * a0 + m[1] * a1;
        data[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_all_clock_qubits(std::span<Complex> amps, unsigned n_clock, const Mat2 &m) {
    for (unsigned q = 0; q < n_clock; ++q) {
        apply_single_qubit(amps, q, m);
    }
}

void apply_head_controlled_z(std::span<Complex> amps, unsigned n_clock, unsigned site) {
    const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
    const std::int64_t head = std::int64_t{1} << n_clock;
    const std::int64_t target = std::int64_t{1} << site;
    Complex *data = amps.data();
    // Head is the top bit, so the head-up half starts at `head`.
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < quarter; ++j) {
        const std::int64_t idx = head | insert_zero_bit(j, site) | target;
        data[idx] = -data[idx];
    }
}

void apply_detuning_phase(std::span<Complex> amps, unsigned n_clock, double clock_phase,
                          double head_phase) {
    std::vector<Complex> table(2 * (n_clock + 1));
    for (unsigned h = 0; h < 2; ++h) {
        for (unsigned k = 0; k <= n_clock; ++k) {
            table[h * (n_clock + 1) + k] = detuning_factor(clock_phase, head_phase, k, h);
        }
    }
    const auto size = static_cast<std::int64_t>(amps.size());
    const std::uint64_t clock_mask = (std::uint64_t{1} << n_clock) - 1;
    Complex *data = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < size; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        const auto k = static_cast<unsigned>(std::popcount(u & clock_mask));
        data[i] *= table[(u >> n_clock) * (n_clock + 1) + k];
    }
}

double probability_bit_set(std::span<const Complex> amps, unsigned bit) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::int64_t mask = std::int64_t{1} << bit;
    const Complex *data = amps.data();
    double p = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (std::int64_t i = 0; i < half; ++i) {
        p += std::norm(data[insert_zero_bit(i, bit) | mask]);
    }
    return p;
}

double squared_norm(std::span<const Complex> amps) {
    const auto size = static_cast<std::int64_t>(amps.size());
    const Complex *data = amps.data();
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::int64_t i = 0; i < size; ++i) {
        s += std::norm(data[i]);
    }
    return s;
}

} // namespace omp

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) {
        omp_set_num_threads(n);
    }
#else
    (void)n;
#endif
}

} // namespace ghzclock::kernels
