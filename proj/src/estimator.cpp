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

#include "ghzclock/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "ghzclock/error.hpp"
#include "ghzclock/random.hpp"
#include "ghzclock/trajectories.hpp"

namespace ghzclock {

FringeScan fringe_scan(long n_atoms, double ramsey_time, std::span<const double> detuning_grid,
                       const std::optional<ScanNoise> &noise, long trajectories,
                       std::uint64_t seed, const ScanOptions &options) {
    require(!detuning_grid.empty(), ErrorCode::InvalidArgument, "detuning grid is empty");
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "scan needs at least one clock atom");
    require(ramsey_time >= 0.0, ErrorCode::InvalidArgument, "Ramsey time must be >= 0");
    require(!noise || trajectories >= 1, ErrorCode::InvalidArgument,
            "a noisy scan needs at least one trajectory per point");

    FringeScan scan;
    scan.detunings.assign(detuning_grid.begin(), detuning_grid.end());
    scan.p_up.assign(detuning_grid.size(), 0.0);
    scan.n_atoms = n_atoms;
    scan.ramsey_time = ramsey_time;
    scan.head_detuning = options.head_detuning;
    scan.trajectories_per_point = noise ? trajectories : 0;

    std::optional<ProtocolSchedule> schedule;
    if (noise) {
        noise->params.validate();
        schedule = build_schedule(n_atoms, noise->gate_time, noise->transport_time, ramsey_time,
                                  noise->pulse_time);
    }

    const auto points = static_cast<long>(detuning_grid.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < points; ++k) {
        try {
            const auto idx = static_cast<std::size_t>(k);
            const Detunings d{detuning_grid[idx], options.head_detuning};
            const auto state =
                run_protocol(n_atoms, options.backend, d, ramsey_time, options.register_options);
            double p = state.head_readout().p_up;
            if (noise) {
                p = serial::run_trajectories(n_atoms, *schedule, noise->params, p,
                                             stream_seed(seed, static_cast<std::uint64_t>(k)),
                                             trajectories)
                        .mean_p_up;
            }
            scan.p_up[idx] = p;
        } catch (...) {
#pragma omp critical(ghzclock_scan_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return scan;
}

namespace {

struct LinearFit {
    std::array<double, 3> coef{}; // cos, sin, offset
    double rss = std::numeric_limits<double>::infinity();
};

/// Solves the 3x3 normal equations for y ~ a cos(f x) + b sin(f x) + c.
LinearFit fit_at_frequency(std::span<const double> x, std::span<const double> y, double f) {
    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::array<double, 3> row{std::cos(f * x[i]), std::sin(f * x[i]), 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            m[r][3] += row[r] * y[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        if (std::abs(m[col][col]) < 1e-12 * static_cast<double>(x.size())) {
            return {};
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double factor = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    LinearFit fit;
    for (int r = 0; r < 3; ++r) fit.coef[r] = m[r][3] / m[r][r];
    fit.rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double model =
            fit.coef[0] * std::cos(f * x[i]) + fit.coef[1] * std::sin(f * x[i]) + fit.coef[2];
        fit.rss += (y[i] - model) * (y[i] - model);
    }
    return fit;
}

} // namespace

FringeFit analyze_fringe(const FringeScan &scan) {
    const auto &x = scan.detunings;
    const auto &y = scan.p_up;
    require(x.size() == y.size(), ErrorCode::InvalidArgument, "fringe scan columns differ in length");
    require(x.size() >= 4, ErrorCode::InvalidArgument, "fringe fit needs at least 4 points");

    FringeFit out;
    const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
    if (*y_hi - *y_lo <= 1e-12) {
        out.offset = *y_lo;
        return out;
    }

    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    const double span = sorted.back() - sorted.front();
    double min_spacing = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double gap = sorted[i] - sorted[i - 1];
        if (gap > 0.0) min_spacing = std::min(min_spacing, gap);
    }
    require(span > 0.0, ErrorCode::InvalidArgument, "fringe scan has no detuning span");

    const double f_lo = std::numbers::pi / span;
    const double f_hi = std::numbers::pi / min_spacing;
    const double step = 2.0 * std::numbers::pi / span / 16.0;
    double best_f = f_lo;
    double best_rss = std::numeric_limits<double>::infinity();
    for (double f = f_lo; f <= f_hi; f += step) {
        const double rss = fit_at_frequency(x, y, f).rss;
        if (rss < best_rss) {
            best_rss = rss;
            best_f = f;
        }
    }

    // Golden-section polish of the periodogram minimum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(f_lo * 0.5, best_f - step);
    double b = best_f + step;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fit_at_frequency(x, y, c).rss;
    double fd = fit_at_frequency(x, y, d).rss;
    for (int iter = 0; iter < 200 && (b - a) > 1e-15 * best_f; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fit_at_frequency(x, y, c).rss;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fit_at_frequency(x, y, d).rss;
        }
    }
    double f = 0.5 * (a + b);
    auto fit = fit_at_frequency(x, y, f);
    if (fit.rss > best_rss) {
        f = best_f;
        fit = fit_at_frequency(x, y, f);
    }

    out.angular_frequency = f;
    out.cos_amplitude = fit.coef[0];
    out.sin_amplitude = fit.coef[1];
    out.offset = fit.coef[2];
    out.contrast = 2.0 * std::hypot(fit.coef[0], fit.coef[1]);
    out.fringe_period = 2.0 * std::numbers::pi / f;
    return out;
}

double phase_sensitivity(double contrast, long n_atoms, double ramsey_time, long shots) {
    require(contrast != 0.0, ErrorCode::UndefinedSensitivity,
            "zero fringe contrast: the detuning cannot be estimated");
    require(contrast > 0.0 && contrast <= 1.0, ErrorCode::InvalidArgument,
            "contrast must lie in (0, 1]");
    require(n_atoms >= 1 && ramsey_time > 0.0 && shots >= 1, ErrorCode::InvalidArgument,
            "sensitivity needs N >= 1, T > 0 and at least one shot");
    return 1.0 / (contrast * static_cast<double>(n_atoms) * ramsey_time *
                  std::sqrt(static_cast<double>(shots)));
}

double sql_baseline(long n_atoms, double ramsey_time, long shots) {
    require(n_atoms >= 1 && ramsey_time > 0.0 && shots >= 1, ErrorCode::InvalidArgument,
            "sensitivity needs N >= 1, T > 0 and at least one shot");
    return 1.0 / (std::sqrt(static_cast<double>(n_atoms)) * ramsey_time *
                  std::sqrt(static_cast<double>(shots)));
}

PrecisionReport precision_report(const FringeFit &fit, long n_atoms, double ramsey_time,
                                 long shots) {
    PrecisionReport report;
    report.contrast = std::clamp(fit.contrast, 0.0, 1.0);
    require(fit.fringe_period.has_value(), ErrorCode::UndefinedSensitivity,
            "flat fringe: no period and no sensitivity");
    report.fringe_period = *fit.fringe_period;
    report.sigma_delta_omega = phase_sensitivity(report.contrast, n_atoms, ramsey_time, shots);
    report.sql_sigma = sql_baseline(n_atoms, ramsey_time, shots);
    report.gain_over_sql = report.sql_sigma / report.sigma_delta_omega;
    return report;
}

AtomNumberOptimum optimize_atom_number(const OptimizeInputs &inputs, double ramsey_time,
                                       long n_min, long n_max, long n_step) {
    require(n_min >= 1 && n_max >= n_min && n_step >= 1, ErrorCode::InvalidArgument,
            "atom-number range must satisfy 1 <= n_min <= n_max, step >= 1");
    inputs.params.validate();

    AtomNumberOptimum out;
    const long count = (n_max - n_min) / n_step + 1;
    out.curve.resize(static_cast<std::size_t>(count));
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        try {
            const long n = n_min + i * n_step;
            const auto schedule = build_schedule(n, inputs.gate_time, inputs.transport_time,
                                                 ramsey_time, inputs.pulse_time);
            AtomNumberPoint point;
            point.n_atoms = n;
            point.total_duration = schedule.total_duration;
            point.survival = survival_probability(schedule, n, inputs.params);
            point.figure_of_merit = point.survival * static_cast<double>(n);
            point.gain_over_sql = point.survival * std::sqrt(static_cast<double>(n));
            out.curve[static_cast<std::size_t>(i)] = point;
        } catch (...) {
#pragma omp critical(ghzclock_optimize_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const auto best = std::max_element(out.curve.begin(), out.curve.end(),
                                       [](const AtomNumberPoint &a, const AtomNumberPoint &b) {
                                           return a.figure_of_merit < b.figure_of_merit;
                                       });
    out.n_opt = best->n_atoms;
    return out;
}

} // namespace ghzclock
