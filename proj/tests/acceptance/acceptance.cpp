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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghzclock/commands.hpp"
#include "ghzclock/config.hpp"
#include "ghzclock/error.hpp"
#include "ghzclock/estimator.hpp"
#include "ghzclock/lattice.hpp"
#include "ghzclock/rates.hpp"
#include "ghzclock/register.hpp"
#include "ghzclock/trajectories.hpp"

using namespace ghzclock;

namespace {

// Tolerances.
constexpr double kGhzFidelityFloor = 1.0 - 1e-10;
constexpr double kGhzSeconds = 10.0;
constexpr double kFringeTolerance = 1e-10;
constexpr double kLargeScanSeconds = 60.0;
constexpr double kBackendTolerance = 1e-9;
constexpr double kPaperFactor = 2.0;
constexpr double kSigmaBand = 3.0;
constexpr double kGainTolerance = 1e-9;
constexpr double kDepthTolerance = 1e-9;
constexpr double kFrequencyTolerance = 1e-6;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char *format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

bool within_factor(double value, double target, double factor) {
    return value >= target / factor && value <= target * factor;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

// 1 ----------------------------------------------------------------------

Outcome ghz_construction() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 1.0;
    for (long n = 2; n <= 12; ++n) {
        RegisterOptions options;
        options.dense_cap = 12;
        ProtocolObserver obs;
        obs.on_checkpoint = [&](Stage stage, const RegisterState &s) {
            if (stage == Stage::Ghz) {
                worst = std::min(worst, fidelity(s, ghz_reference(n, Backend::Dense, options)));
            }
        };
        (void)run_protocol(n, Backend::Dense, {}, 1e-3, options, obs);
    }
    const double t = seconds_since(start);
    return {worst >= kGhzFidelityFloor && t < kGhzSeconds,
            fmt("min fidelity 1-%.2e over N=2..12, %.2f s", 1.0 - worst, t)};
}

// 2 ----------------------------------------------------------------------

Outcome fringe_law() {
    const double t = 1e-3;
    const double head = 150.0;
    double worst = 0.0;
    auto check = [&](long n, Backend backend, int points) {
        const double period = 2.0 * std::numbers::pi / (static_cast<double>(n) * t);
        const auto grid = linspace(-period, period, points);
        ScanOptions o;
        o.backend = backend;
        o.head_detuning = head;
        const auto scan = fringe_scan(n, t, grid, std::nullopt, 0, 1, o);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double chi = (static_cast<double>(n) * grid[i] + head) * t;
            worst = std::max(worst, std::abs(scan.p_up[i] - std::pow(std::sin(chi / 2.0), 2)));
        }
    };
    for (long n : {1L, 5L, 10L}) check(n, Backend::Dense, 101);
    const auto start = std::chrono::steady_clock::now();
    check(1000, Backend::Branch, 100);
    const double large = seconds_since(start);
    return {worst <= kFringeTolerance && large < kLargeScanSeconds,
            fmt("max |p_up - sin^2(chi/2)| = %.2e, N=1000 scan of 100 points %.2f s", worst, large)};
}

// 3 ----------------------------------------------------------------------

Outcome backend_equivalence() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        worst = std::max(worst, backend_crosscheck(8, random_gate_sequence(8, 60, 0xace0 + seed)));
    }
    return {worst < kBackendTolerance, fmt("200 sequences at N=8, max deviation %.2e", worst)};
}

// 4-6 --------------------------------------------------------------------

Outcome intensity_checkpoint() {
    const auto s = derive_setup(parse_config(""));
    const double kw = si_to_kw_per_cm2(s.required.intensity);
    const bool binding_al = s.required.binding_species.rfind("Al27", 0) == 0;
    return {within_factor(kw, 20.0, kPaperFactor) && binding_al,
            fmt("I_L = %.3f kW/cm^2 (target 20, factor 2), binding %s", kw,
                s.required.binding_species.c_str())};
}

Outcome lifetime_checkpoint() {
    const auto s = derive_setup(parse_config(""));
    const double sr = s.decoherence.tau_scatter_clock;
    const double al = s.decoherence.tau_scatter_head;
    return {within_factor(sr, 10.0, kPaperFactor) && within_factor(al, 8.0, kPaperFactor),
            fmt("tau_Sr = %.3f s (target 10), tau_Al = %.3f s (target 8)", sr, al)};
}

Outcome gate_time_checkpoint() {
    const auto s = derive_setup(parse_config(""));
    return {within_factor(s.gate_time, 20e-6, kPaperFactor),
            fmt("gate time %.3f us (target 20, factor 2), dE = %.4e J", s.gate_time * 1e6,
                s.interaction_energy)};
}

// 7 ----------------------------------------------------------------------

/// Standard error of the fitted contrast when point i carries variance var[i]:
/// sandwich covariance of the linear least-squares coefficients at frequency f.
double contrast_sigma(const std::vector<double> &x, const std::vector<double> &var, double f,
                      double a, double b) {
    double m[3][3] = {};
    double meat[3][3] = {};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double row[3] = {std::cos(f * x[i]), std::sin(f * x[i]), 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                m[r][c] += row[r] * row[c];
                meat[r][c] += row[r] * row[c] * var[i];
            }
        }
    }
    // Inverse of the 3x3 normal matrix by cofactors.
    double inv[3][3];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
            inv[r][c] = (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) / det;
        }
    }
    double cov[3][3] = {};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) cov[r][c] += inv[r][k] * meat[k][l] * inv[l][c];
    const double amp = std::hypot(a, b);
    const double g[2] = {2.0 * a / amp, 2.0 * b / amp};
    double v = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) v += g[r] * cov[r][c] * g[c];
    return std::sqrt(v);
}

Outcome decoherence_consistency() {
    const auto base = parse_config("");
    std::string detail;
    bool pass = true;

    struct Setting {
        long n;
        double ramsey;
    };
    for (const auto [n, ramsey] : {Setting{10, 0.5}, Setting{100, 0.05}, Setting{1000, 1e-3}}) {
        auto c = with_override(base, "protocol.n_atoms", n);
        c = with_override(c, "protocol.ramsey_time_s", ramsey);
        const auto setup = derive_setup(c);
        const auto schedule =
            build_schedule(n, setup.gate_time, setup.transport_time, ramsey, setup.pulse_time);
        const double q = 1.0 - survival_probability(schedule, n, setup.decoherence);
        const long m = 100000;
        const auto batch = omp::run_trajectories(n, schedule, setup.decoherence, 0.0, 99 + n, m);
        const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(m));
        const double z = (batch.scattered_fraction() - q) / sigma;
        pass = pass && std::abs(z) <= kSigmaBand;
        detail += fmt("N=%ld T=%g: %.5f vs %.5f (%.2f sigma); ", n, ramsey,
                      batch.scattered_fraction(), q, z);
    }

    // Fringe contrast under the same model.
    const long n = 100;
    const double ramsey = 0.05;
    auto c = with_override(base, "protocol.n_atoms", n);
    c = with_override(c, "protocol.ramsey_time_s", ramsey);
    const auto setup = derive_setup(c);
    const auto schedule =
        build_schedule(n, setup.gate_time, setup.transport_time, ramsey, setup.pulse_time);
    const double s = survival_probability(schedule, n, setup.decoherence);
    const double period = 2.0 * std::numbers::pi / (static_cast<double>(n) * ramsey);
    const auto grid = linspace(-period, period, 101);
    const long m = 2000;
    const ScanNoise noise{setup.decoherence, setup.gate_time, setup.transport_time, setup.pulse_time};
    const auto scan = fringe_scan(n, ramsey, grid, noise, m, 4242);
    const auto fit = analyze_fringe(scan);
    std::vector<double> var;
    for (double dw : grid) {
        const double p0 = std::pow(std::sin(static_cast<double>(n) * dw * ramsey / 2.0), 2);
        var.push_back((p0 - 0.5) * (p0 - 0.5) * s * (1.0 - s) / static_cast<double>(m));
    }
    const double sigma =
        contrast_sigma(grid, var, fit.angular_frequency, fit.cos_amplitude, fit.sin_amplitude);
    const double z = (fit.contrast - s) / sigma;
    pass = pass && std::abs(z) <= kSigmaBand;
    detail += fmt("contrast %.5f vs exp(-Lambda) %.5f (%.2f sigma)", fit.contrast, s, z);
    return {pass, detail};
}

// 8 ----------------------------------------------------------------------

Outcome metrological_gain() {
    const double t = 1e-3;
    double worst = 0.0;
    for (long n : {1L, 4L, 100L, 1000L}) {
        const double period = 2.0 * std::numbers::pi / (static_cast<double>(n) * t);
        const auto grid = linspace(-period, period, 101);
        const auto scan = fringe_scan(n, t, grid, std::nullopt, 0, 1);
        const auto report = precision_report(analyze_fringe(scan), n, t, 1);
        const double root = std::sqrt(static_cast<double>(n));
        worst = std::max(worst, std::abs(report.gain_over_sql - root) / root);
    }
    const auto opt = execute(Command::Optimize, parse_config(""));
    const long n_opt = opt.metadata["n_opt"];
    const bool recorded = opt.metadata.contains("ramsey_time_s");
    const bool in_band = n_opt >= 100 && n_opt <= 10000;
    return {worst <= kGainTolerance && in_band && recorded,
            fmt("max rel |gain - sqrt(N)| %.2e; N_opt = %ld at T = %g s (recorded: %s)", worst,
                n_opt, opt.metadata["ramsey_time_s"].get<double>(), recorded ? "yes" : "no")};
}

// 9 ----------------------------------------------------------------------

Outcome potential_correctness() {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double amu = 1.66053906660e-27;
    double worst_depth = 0.0;
    double worst_freq = 0.0;
    int draws = 0;
    while (draws < 100) {
        SpeciesOptics s{"draw", (5.0 + 200.0 * u(rng)) * amu, -(50.0 + 950.0 * u(rng)),
                        -3.0 + 6.0 * u(rng), SpeciesRole::HeadUp, 3, -3};
        LatticeConfig c;
        c.delta = 0.01 + 0.98 * u(rng);
        if (std::abs(1.0 + c.delta * s.rho) < 1e-2) continue;
        c.lambda_m = (300.0 + 800.0 * u(rng)) * 1e-9;
        c.intensity = 1e6 + 1e9 * u(rng);
        c.transverse_intensity = c.intensity;
        c.phi = kOverlapPhase;
        ++draws;
        const double closed = overlap_depth_closed_form(c, s);
        worst_depth = std::max(worst_depth, std::abs(well_depth(c, s) - closed) / closed);

        c.phi = u(rng) * std::numbers::pi;
        if (well_depth(c, s) <= 0.0) continue;
        const double z0 = potential_minimum_position(c, s);
        const double h = c.lambda_m * 1e-4;
        const std::vector<double> zs{z0 - h, z0, z0 + h};
        const auto uz = optical_potential_curve(c, s, zs);
        const double fd = std::sqrt((uz[0] - 2.0 * uz[1] + uz[2]) / (h * h) / s.mass);
        const double analytic = trap_frequencies(c, s).axial;
        worst_freq = std::max(worst_freq, std::abs(analytic - fd) / fd);
    }
    return {worst_depth <= kDepthTolerance && worst_freq <= kFrequencyTolerance,
            fmt("100 draws: depth rel err %.2e, trap frequency rel err %.2e", worst_depth,
                worst_freq)};
}

// 10 ---------------------------------------------------------------------

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const auto config = parse_config(R"({
        "run": {"trajectories": 5000, "seed": 314159},
        "sweep": {"axes": [
            {"path": "protocol.n_atoms", "values": [1, 10, 100, 1000]},
            {"path": "protocol.ramsey_time_s", "values": [0.001, 0.01, 0.1]},
            {"path": "lattice.delta", "values": [0.25, 0.5]}]}})");
    const auto root = std::filesystem::temp_directory_path() / "ghzclock_acceptance";
    std::filesystem::remove_all(root);
    std::ostringstream err;
    const int a = run_command(Command::Sweep, config, root / "a", err);
    const int b = run_command(Command::Sweep, config, root / "b", err);
    const auto ca = slurp(root / "a" / "sweep.csv");
    const auto cb = slurp(root / "b" / "sweep.csv");
    const bool same = a == 0 && b == 0 && !ca.empty() && ca == cb;
    return {same, fmt("two sweeps of 24 points: %zu bytes each, identical: %s", ca.size(),
                      ca == cb ? "yes" : "no")};
}

} // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"GHZ construction", ghz_construction},
        {"fringe law", fringe_law},
        {"backend equivalence", backend_equivalence},
        {"intensity checkpoint", intensity_checkpoint},
        {"lifetime checkpoint", lifetime_checkpoint},
        {"gate-time checkpoint", gate_time_checkpoint},
        {"decoherence consistency", decoherence_consistency},
        {"metrological gain", metrological_gain},
        {"potential correctness", potential_correctness},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s %2zu %-24s %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
