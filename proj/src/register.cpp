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

#include "ghzclock/register.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghzclock/error.hpp"
#include "ghzclock/random.hpp"

namespace ghzclock {

namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

std::string_view to_string(Backend backend) noexcept {
    return backend == Backend::Dense ? "dense" : "branch";
}

Backend backend_from_string(std::string_view name) {
    if (name == "dense") return Backend::Dense;
    if (name == "branch") return Backend::Branch;
    throw Error(ErrorCode::ConfigRange, "unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
    case Stage::Superposed: return "superposed";
    case Stage::Entangled: return "entangled";
    case Stage::Ghz: return "ghz";
    case Stage::FreeEvolved: return "free_evolved";
    case Stage::Disentangled: return "disentangled";
    case Stage::Final: return "final";
    }
    return "final";
}

Backend RegisterState::backend() const noexcept {
    return std::holds_alternative<DenseState>(impl_) ? Backend::Dense : Backend::Branch;
}

long RegisterState::n_atoms() const noexcept {
    return std::visit([](const auto &s) { return s.n_atoms(); }, impl_);
}

void RegisterState::apply_clock_rotation(const Mat2 &m) {
    std::visit([&](auto &s) { s.apply_clock_rotation(m); }, impl_);
}

void RegisterState::apply_head_rotation(const Mat2 &m) {
    std::visit([&](auto &s) { s.apply_head_rotation(m); }, impl_);
}

void RegisterState::apply_phase_gate(long site) {
    std::visit([&](auto &s) { s.apply_phase_gate(site); }, impl_);
}

void RegisterState::apply_free_evolution(double delta_omega, double delta_omega_head,
                                         double duration) {
    std::visit([&](auto &s) { s.apply_free_evolution(delta_omega, delta_omega_head, duration); },
               impl_);
}

HeadProbabilities RegisterState::head_readout() const {
    return std::visit([](const auto &s) { return s.head_readout(); }, impl_);
}

double RegisterState::norm() const {
    return std::visit([](const auto &s) { return s.norm(); }, impl_);
}

Complex RegisterState::inner_product(const RegisterState &other) const {
    require(other.backend() == backend(), ErrorCode::InvalidArgument,
            "inner product across backends; expand with to_amplitudes() instead");
    return std::visit(
        [&](const auto &s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            return s.inner_product(std::get<T>(other.impl_));
        },
        impl_);
}

std::vector<Complex> RegisterState::to_amplitudes() const {
    return std::visit(Overloaded{
                          [](const DenseState &s) {
                              return std::vector<Complex>(s.amplitudes().begin(),
                                                          s.amplitudes().end());
                          },
                          [](const BranchProductState &s) { return s.to_amplitudes(); },
                      },
                      impl_);
}

RegisterState init_register(long n_atoms, Backend backend, const RegisterOptions &options) {
    if (backend == Backend::Dense) {
        return RegisterState(DenseState::zero(n_atoms, options.dense_cap, options.parallelism));
    }
    return RegisterState(BranchProductState::zero(n_atoms, options.rank_bound));
}

double fidelity(const RegisterState &a, const RegisterState &b) {
    const double na = a.norm();
    const double nb = b.norm();
    return std::norm(a.inner_product(b)) / (na * na * nb * nb);
}

namespace {

struct Term {
    Complex amplitude;
    Vec2 clock;
    Vec2 head;
};

RegisterState product_sum(long n_atoms, Backend backend, const RegisterOptions &options,
                          std::initializer_list<Term> terms) {
    const auto n = static_cast<std::size_t>(n_atoms);
    std::vector<Branch> branches;
    for (const auto &t : terms) {
        branches.push_back(Branch{t.amplitude, std::vector<Vec2>(n, t.clock), t.head});
    }
    auto state = BranchProductState::from_branches(n_atoms, std::move(branches), options.rank_bound);
    if (backend == Backend::Branch) {
        return RegisterState(std::move(state));
    }
    require(n_atoms <= options.dense_cap, ErrorCode::Capacity,
            "reference state exceeds the dense capacity");
    return RegisterState(
        DenseState::from_amplitudes(n_atoms, state.to_amplitudes(), options.parallelism));
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Vec2 kZero{Complex{1.0}, Complex{0.0}};
const Vec2 kOne{Complex{0.0}, Complex{1.0}};
const Vec2 kPlus{Complex{kInvSqrt2}, Complex{kInvSqrt2}};
const Vec2 kMinus{Complex{kInvSqrt2}, Complex{-kInvSqrt2}};

} // namespace

RegisterState ghz_reference(long n_atoms, Backend backend, const RegisterOptions &options) {
    return stage_reference(Stage::Ghz, n_atoms, 0.0, backend, options);
}

RegisterState final_reference(long n_atoms, double chi, Backend backend,
                              const RegisterOptions &options) {
    return stage_reference(Stage::Final, n_atoms, chi, backend, options);
}

RegisterState stage_reference(Stage stage, long n_atoms, double chi, Backend backend,
                              const RegisterOptions &options) {
    const Complex phase = std::polar(1.0, chi);
    switch (stage) {
    case Stage::Superposed:
        return product_sum(n_atoms, backend, options, {{1.0, kPlus, kPlus}});
    case Stage::Entangled:
        return product_sum(n_atoms, backend, options,
                           {{kInvSqrt2, kPlus, kZero}, {kInvSqrt2, kMinus, kOne}});
    case Stage::Ghz:
        return product_sum(n_atoms, backend, options,
                           {{kInvSqrt2, kZero, kZero}, {kInvSqrt2, kOne, kOne}});
    case Stage::FreeEvolved:
        return product_sum(n_atoms, backend, options,
                           {{kInvSqrt2, kZero, kZero}, {kInvSqrt2 * phase, kOne, kOne}});
    case Stage::Disentangled:
        return product_sum(n_atoms, backend, options,
                           {{1.0, kPlus, Vec2{Complex{kInvSqrt2}, kInvSqrt2 * phase}}});
    case Stage::Final:
        return product_sum(n_atoms, backend, options,
                           {{1.0, kZero, Vec2{Complex{std::cos(chi / 2.0)},
                                              Complex{0.0, -std::sin(chi / 2.0)}}}});
    }
    throw Error(ErrorCode::Internal, "unknown protocol stage");
}

double ramsey_phase(long n_atoms, const Detunings &d, double ramsey_time) noexcept {
    return (static_cast<double>(n_atoms) * d.clock + d.head) * ramsey_time;
}

void run_schedule(RegisterState &state, const ProtocolSchedule &schedule,
                  const Detunings &detunings, const ProtocolObserver &observer) {
    require(schedule.n_atoms == state.n_atoms(), ErrorCode::InvalidArgument,
            "schedule and register sizes differ");
    const Mat2 h = hadamard();
    int clock_pulses = 0;
    int head_pulses = 0;
    auto checkpoint = [&](Stage stage) {
        if (observer.on_checkpoint) observer.on_checkpoint(stage, state);
    };

    const auto &steps = schedule.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto &step = steps[i];
        switch (step.kind) {
        case StepKind::HadamardAll:
            state.apply_clock_rotation(h);
            ++clock_pulses;
            if (clock_pulses == 2) checkpoint(Stage::Ghz);
            break;
        case StepKind::HeadPulse:
            state.apply_head_rotation(h);
            ++head_pulses;
            if (head_pulses == 1) checkpoint(Stage::Superposed);
            if (head_pulses == 2) checkpoint(Stage::Final);
            break;
        case StepKind::PhaseGate: {
            require(step.site.has_value(), ErrorCode::InvalidArgument, "phase gate without a site");
            state.apply_phase_gate(*step.site);
            const bool sweep_done = i + 1 == steps.size() ||
                                    (steps[i + 1].kind != StepKind::PhaseGate &&
                                     steps[i + 1].kind != StepKind::Transport);
            if (sweep_done) checkpoint(clock_pulses <= 1 ? Stage::Entangled : Stage::Disentangled);
            break;
        }
        case StepKind::FreeEvolution:
            state.apply_free_evolution(detunings.clock, detunings.head, step.duration);
            checkpoint(Stage::FreeEvolved);
            break;
        case StepKind::Transport:
        case StepKind::Readout:
            break;
        }
        if (observer.on_step) observer.on_step(step, state);
    }
}

RegisterState run_protocol(long n_atoms, Backend backend, const Detunings &detunings,
                           double ramsey_time, const RegisterOptions &options,
                           const ProtocolObserver &observer) {
    auto state = init_register(n_atoms, backend, options);
    const auto schedule = build_schedule(n_atoms, 0.0, 0.0, ramsey_time, 0.0);
    run_schedule(state, schedule, detunings, observer);
    return state;
}

void apply_gate(RegisterState &state, const Gate &gate) {
    std::visit(Overloaded{
                   [&](const ClockRotationGate &g) { state.apply_clock_rotation(g.matrix); },
                   [&](const HeadRotationGate &g) { state.apply_head_rotation(g.matrix); },
                   [&](const PhaseGate &g) { state.apply_phase_gate(g.site); },
                   [&](const FreeEvolutionGate &g) {
                       state.apply_free_evolution(g.detunings.clock, g.detunings.head, g.duration);
                   },
               },
               gate);
}

Mat2 random_unitary(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double two_pi = 2.0 * std::numbers::pi;
    const double theta = std::asin(std::sqrt(uniform01(rng)));
    const double psi = two_pi * uniform01(rng);
    const double chi = two_pi * uniform01(rng);
    const double global = two_pi * uniform01(rng);
    const Complex g = std::polar(1.0, global);
    return {g * std::polar(std::cos(theta), psi), g * std::polar(std::sin(theta), chi),
            -g * std::polar(std::sin(theta), -chi), g * std::polar(std::cos(theta), -psi)};
}

std::vector<Gate> random_gate_sequence(long n_atoms, std::size_t length, std::uint64_t seed) {
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "register needs at least one clock atom");
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<Gate> gates;
    gates.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        switch (rng() % 4) {
        case 0: gates.emplace_back(ClockRotationGate{random_unitary(rng())}); break;
        case 1: gates.emplace_back(HeadRotationGate{random_unitary(rng())}); break;
        case 2: gates.emplace_back(PhaseGate{static_cast<long>(rng() % static_cast<std::uint64_t>(n_atoms))}); break;
        default: {
            const Detunings d{2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
            gates.emplace_back(FreeEvolutionGate{d, 4.0 * uniform01(rng)});
        }
        }
    }
    return gates;
}

double backend_crosscheck(long n_atoms, const std::vector<Gate> &gates) {
    require(n_atoms >= 1 && n_atoms <= 12, ErrorCode::Capacity,
            "backend cross-check supports 1 <= N <= 12");
    RegisterOptions options;
    options.dense_cap = 12;
    auto dense = init_register(n_atoms, Backend::Dense, options);
    auto branch = init_register(n_atoms, Backend::Branch, options);
    for (const auto &g : gates) {
        apply_gate(dense, g);
        apply_gate(branch, g);
    }
    const auto a = dense.to_amplitudes();
    const auto b = branch.to_amplitudes();

    const auto pivot = static_cast<std::size_t>(std::distance(
        a.begin(), std::max_element(a.begin(), a.end(), [](const Complex &x, const Complex &y) {
            return std::abs(x) < std::abs(y);
        })));
    Complex align{1.0, 0.0};
    if (std::abs(b[pivot]) > 0.0 && std::abs(a[pivot]) > 0.0) {
        const Complex ratio = b[pivot] / a[pivot];
        align = ratio / std::abs(ratio);
    }
    double deviation = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        deviation = std::max(deviation, std::abs(a[i] * align - b[i]));
    }
    return deviation;
}

} // namespace ghzclock
