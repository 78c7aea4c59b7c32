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

// Serial reference kernels against their OpenMP counterparts.
//   ghzclock_bench --benchmark_filter=Trajectories
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ghzclock/dense_state.hpp"
#include "ghzclock/kernels.hpp"
#include "ghzclock/trajectories.hpp"

using namespace ghzclock;

namespace {

std::vector<Complex> random_state(unsigned qubits) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Complex> v(std::size_t{1} << qubits);
    for (auto &a : v) a = {g(rng), g(rng)};
    return v;
}

template <auto Kernel>
void BM_AllClockQubits(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    auto amps = random_state(n + 1);
    const Mat2 h = hadamard();
    for (auto _ : state) {
        Kernel(amps, n, h);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(amps.size()) * n);
}

template <auto Kernel>
void BM_DetuningPhase(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    auto amps = random_state(n + 1);
    for (auto _ : state) {
        Kernel(amps, n, 1e-3, 2e-3);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(amps.size()));
}

template <auto Kernel>
void BM_ControlledZ(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(0));
    auto amps = random_state(n + 1);
    for (auto _ : state) {
        for (unsigned site = 0; site < n; ++site) Kernel(amps, n, site);
        benchmark::DoNotOptimize(amps.data());
    }
}

template <auto Batch>
void BM_Trajectories(benchmark::State &state) {
    const long n = state.range(0);
    const auto schedule = build_schedule(n, 20e-6, 10e-6, 1e-3);
    const DecoherenceParams params{10.0, 8.0, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(Batch(n, schedule, params, 0.5, 7, 100000));
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}

} // namespace

BENCHMARK_TEMPLATE(BM_AllClockQubits, kernels::serial::apply_all_clock_qubits)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_AllClockQubits, kernels::omp::apply_all_clock_qubits)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_DetuningPhase, kernels::serial::apply_detuning_phase)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_DetuningPhase, kernels::omp::apply_detuning_phase)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_ControlledZ, kernels::serial::apply_head_controlled_z)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_ControlledZ, kernels::omp::apply_head_controlled_z)->DenseRange(10, 18, 4);
BENCHMARK_TEMPLATE(BM_Trajectories, serial::run_trajectories)->Arg(10)->Arg(1000);
BENCHMARK_TEMPLATE(BM_Trajectories, omp::run_trajectories)->Arg(10)->Arg(1000);

BENCHMARK_MAIN();
