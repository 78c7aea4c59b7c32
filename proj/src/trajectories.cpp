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

#include "ghzclock/trajectories.hpp"

#include <cmath>
#include <random>

#include "ghzclock/random.hpp"

namespace ghzclock {

std::optional<NoiseEvent> sample_first_event(long n_atoms, const ProtocolSchedule &schedule,
                                             const DecoherenceParams &params, std::uint64_t seed) {
    const double rate = params.total_rate(n_atoms);
    if (!(rate > 0.0) || !(schedule.total_duration > 0.0)) {
        return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    // 1 - u lies in (0, 1], so the log is finite.
    const double time = std::isinf(rate) ? 0.0 : -std::log(1.0 - uniform01(rng)) / rate;
    if (time >= schedule.total_duration) {
        return std::nullopt;
    }

    NoiseEvent event;
    event.time = time;
    const double clock_rate = static_cast<double>(n_atoms) / params.tau_scatter_clock;
    const double head_rate = 1.0 / params.tau_scatter_head;
    const double pick = uniform01(rng) * rate;
    if (std::isinf(rate)) {
        event.target = NoiseTarget::ExtraLoss;
    } else if (pick < clock_rate) {
        event.target = NoiseTarget::ClockAtom;
        event.clock_index = static_cast<long>(uniform01(rng) * static_cast<double>(n_atoms));
    } else if (pick < clock_rate + head_rate) {
        event.target = NoiseTarget::HeadAtom;
    } else {
        event.target = NoiseTarget::ExtraLoss;
    }
    return event;
}

TrajectoryOutcome sample_noisy_trajectory(long n_atoms, const ProtocolSchedule &schedule,
                                          const DecoherenceParams &params,
                                          const Detunings &detunings, std::uint64_t seed) {
    TrajectoryOutcome out;
    out.seed = seed;
    out.first_event = sample_first_event(n_atoms, schedule, params, seed);
    out.scattered = out.first_event.has_value();
    if (out.scattered) {
        out.p_up = 0.5;
    } else {
        auto state = init_register(n_atoms, Backend::Branch);
        run_schedule(state, schedule, detunings);
        out.p_up = state.head_readout().p_up;
    }
    return out;
}

namespace {

bool scatters(long n_atoms, const ProtocolSchedule &schedule, const DecoherenceParams &params,
              std::uint64_t seed) {
    return sample_first_event(n_atoms, schedule, params, seed).has_value();
}

TrajectoryBatch finish(long count, long scattered, double noiseless_p_up) {
    TrajectoryBatch batch;
    batch.trajectories = count;
    batch.scattered = scattered;
    if (count > 0) {
        batch.mean_p_up = (static_cast<double>(count - scattered) * noiseless_p_up +
                           0.5 * static_cast<double>(scattered)) /
                          static_cast<double>(count);
    }
    return batch;
}

} // namespace

namespace serial {

TrajectoryBatch run_trajectories(long n_atoms, const ProtocolSchedule &schedule,
                                 const DecoherenceParams &params, double noiseless_p_up,
                                 std::uint64_t base_seed, long count) {
    long scattered = 0;
    for (long i = 0; i < count; ++i) {
        if (scatters(n_atoms, schedule, params, stream_seed(base_seed, static_cast<std::uint64_t>(i)))) {
            ++scattered;
        }
    }
    return finish(count, scattered, noiseless_p_up);
}

} // namespace serial

namespace omp {

TrajectoryBatch run_trajectories(long n_atoms, const ProtocolSchedule &schedule,
                                 const DecoherenceParams &params, double noiseless_p_up,
                                 std::uint64_t base_seed, long count) {
    long scattered = 0;
#pragma omp parallel for schedule(static) reduction(+ : scattered)
    for (long i = 0; i < count; ++i) {
        if (scatters(n_atoms, schedule, params, stream_seed(base_seed, static_cast<std::uint64_t>(i)))) {
            ++scattered;
        }
    }
    return finish(count, scattered, noiseless_p_up);
}

} // namespace omp

} // namespace ghzclock
