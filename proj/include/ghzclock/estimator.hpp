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
 * Ramsey fringes, fringe analysis and precision figures.
 *
 * A shot is one full protocol run ending in a single binary head readout.
 * At the half-fringe lock point a GHZ fringe of contrast C gives
 *   sigma(dw) = 1 / (C N T sqrt(shots)),
 * against the unentangled limit 1 / (sqrt(N) T sqrt(shots)).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rates.hpp"
#include "register.hpp"

namespace ghzclock {

struct FringeScan {
    std::vector<double> detunings; // rad/s, clock detuning dw
    std::vector<double> p_up;
    long n_atoms = 0;
    double ramsey_time = 0.0;
    double head_detuning = 0.0; // dw', rad/s
    long trajectories_per_point = 0; // 0 for a noiseless scan
};

/// Timing and rates for the decoherence model applied during a scan.
struct ScanNoise {
    DecoherenceParams params;
    double gate_time = 0.0;
    double transport_time = kDefaultTransportTime;
    double pulse_time = 0.0;
};

struct ScanOptions {
    Backend backend = Backend::Branch;
    RegisterOptions register_options;
    double head_detuning = 0.0;
};

/// p_up at every grid point: exact without noise, otherwise the mean over
/// `trajectories` Monte Carlo trajectories (seeded per point from `seed`).
[[nodiscard]] FringeScan fringe_scan(long n_atoms, double ramsey_time,
                                     std::span<const double> detuning_grid,
                                     const std::optional<ScanNoise> &noise, long trajectories,
                                     std::uint64_t seed, const ScanOptions &options = {});

struct FringeFit {
    double contrast = 0.0;
    std::optional<double> fringe_period; // rad/s; empty for a flat scan
    double angular_frequency = 0.0;      // of the fitted sinusoid in dw
    double offset = 0.0;
    double cos_amplitude = 0.0;
    double sin_amplitude = 0.0;
};

/// Least-squares fit of offset + a cos(f dw) + b sin(f dw). The frequency is
/// located by a periodogram over the resolvable band and polished by golden
/// section; contrast is the fitted peak-to-peak 2 sqrt(a^2 + b^2).
[[nodiscard]] FringeFit analyze_fringe(const FringeScan &scan);

/// 1 / (C N T sqrt(shots)). Contrast 0 raises UndefinedSensitivity.
[[nodiscard]] double phase_sensitivity(double contrast, long n_atoms, double ramsey_time,
                                       long shots);

/// 1 / (sqrt(N) T sqrt(shots)).
[[nodiscard]] double sql_baseline(long n_atoms, double ramsey_time, long shots);

struct PrecisionReport {
    double contrast = 0.0;
    double fringe_period = 0.0;
    double sigma_delta_omega = 0.0;
    double sql_sigma = 0.0;
    double gain_over_sql = 0.0;
};

[[nodiscard]] PrecisionReport precision_report(const FringeFit &fit, long n_atoms,
                                               double ramsey_time, long shots);

struct OptimizeInputs {
    DecoherenceParams params;
    double gate_time = 0.0;
    double transport_time = kDefaultTransportTime;
    double pulse_time = 0.0;
};

struct AtomNumberPoint {
    long n_atoms = 0;
    double total_duration = 0.0;
    double survival = 0.0;        // = fringe contrast in the all-or-nothing model
    double figure_of_merit = 0.0; // survival * N
    double gain_over_sql = 0.0;   // survival * sqrt(N)
};

struct AtomNumberOptimum {
    long n_opt = 0;
    std::vector<AtomNumberPoint> curve;
};

/// Maximizes survival(N) * N over N = n_min, n_min + step, ..., <= n_max.
/// The smallest N wins ties.
[[nodiscard]] AtomNumberOptimum optimize_atom_number(const OptimizeInputs &inputs,
                                                     double ramsey_time, long n_min, long n_max,
                                                     long n_step = 1);

} // namespace ghzclock
