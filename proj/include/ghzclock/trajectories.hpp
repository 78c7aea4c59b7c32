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
 * Monte Carlo photon-scattering trajectories under the all-or-nothing model.
 *
 * Scattering is a Poisson process with rate N / tau_clock + 1 / tau_head +
 * extra_loss_rate over the whole schedule. One event anywhere decoheres the
 * register and the head readout becomes a fair coin (p_up = 1/2); otherwise
 * the noiseless probability applies. Trajectory i of a batch uses the seed
 * stream_seed(base_seed, i), so batches are reproducible and can be split
 * across threads in any way.
 */
#pragma once

#include <cstdint>
#include <optional>

#include "rates.hpp"
#include "register.hpp"

namespace ghzclock {

enum class NoiseTarget { ClockAtom, HeadAtom, ExtraLoss };

struct NoiseEvent {
    double time = 0.0;         // s from schedule start
    NoiseTarget target = NoiseTarget::ClockAtom;
    std::optional<long> clock_index;
};

struct TrajectoryOutcome {
    double p_up = 0.0;
    bool scattered = false;
    std::uint64_t seed = 0;
    std::optional<NoiseEvent> first_event;
};

struct TrajectoryBatch {
    long trajectories = 0;
    long scattered = 0;
    double mean_p_up = 0.0;

    [[nodiscard]] double scattered_fraction() const noexcept {
        return trajectories > 0 ? static_cast<double>(scattered) / static_cast<double>(trajectories)
                                : 0.0;
    }
};

/// First decohering event within the schedule, if any. Deterministic in seed.
[[nodiscard]] std::optional<NoiseEvent> sample_first_event(long n_atoms,
                                                           const ProtocolSchedule &schedule,
                                                           const DecoherenceParams &params,
                                                           std::uint64_t seed);

/// One full trajectory; the noiseless probability comes from a branch-backend
/// run of the protocol at the given detunings and schedule.ramsey_time.
[[nodiscard]] TrajectoryOutcome sample_noisy_trajectory(long n_atoms,
                                                        const ProtocolSchedule &schedule,
                                                        const DecoherenceParams &params,
                                                        const Detunings &detunings,
                                                        std::uint64_t seed);

namespace serial {
[[nodiscard]] TrajectoryBatch run_trajectories(long n_atoms, const ProtocolSchedule &schedule,
                                               const DecoherenceParams &params,
                                               double noiseless_p_up, std::uint64_t base_seed,
                                               long count);
} // namespace serial

namespace omp {
[[nodiscard]] TrajectoryBatch run_trajectories(long n_atoms, const ProtocolSchedule &schedule,
                                               const DecoherenceParams &params,
                                               double noiseless_p_up, std::uint64_t base_seed,
                                               long count);
} // namespace omp

} // namespace ghzclock
