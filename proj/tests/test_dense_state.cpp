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

#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <numbers>

#include "ghzclock/dense_state.hpp"
#include "ghzclock/error.hpp"

using namespace ghzclock;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::Ok;
}

std::size_t up(long n) { return std::size_t{1} << n; }

} // namespace

TEST_CASE("initial state is |0...0>|down>") {
    for (long n : {1L, 3L}) {
        const auto s = DenseState::zero(n);
        const auto a = s.amplitudes();
        REQUIRE(a.size() == up(n + 1));
        CHECK(a[0] == Complex{1.0});
        for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == Complex{0.0});
    }
    CHECK(code_of([] { (void)DenseState::zero(20); }) == ErrorCode::Capacity);
    CHECK(code_of([] { (void)DenseState::zero(0); }) == ErrorCode::InvalidProtocolSize);
    CHECK(code_of([] { (void)DenseState::from_amplitudes(2, std::vector<Complex>(4)); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("Hadamard on all clocks gives the uniform superposition") {
    const long n = 5;
    auto s = DenseState::zero(n);
    s.apply_clock_rotation(hadamard());
    const double amp = 1.0 / std::sqrt(static_cast<double>(up(n)));
    const auto a = s.amplitudes();
    for (std::size_t p = 0; p < up(n); ++p) {
        CHECK_THAT(a[p].real(), WithinAbs(amp, 1e-15));
        CHECK(a[p + up(n)] == Complex{0.0});
    }
}

TEST_CASE("identity and H.H leave the state unchanged") {
    auto s = DenseState::zero(4);
    s.apply_clock_rotation(hadamard());
    s.apply_head_rotation(hadamard());
    const auto before = s;
    s.apply_clock_rotation(identity2());
    CHECK(std::abs(s.inner_product(before)) == Catch::Approx(1.0).epsilon(1e-15));
    s.apply_clock_rotation(hadamard());
    s.apply_clock_rotation(hadamard());
    s.apply_head_rotation(hadamard());
    s.apply_head_rotation(hadamard());
    CHECK_THAT(std::abs(s.inner_product(before)), WithinAbs(1.0, 1e-10));
}

TEST_CASE("Hadamard on the head") {
    const long n = 2;
    auto s = DenseState::zero(n);
    s.apply_head_rotation(hadamard());
    CHECK_THAT(s.amplitudes()[0].real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(s.amplitudes()[up(n)].real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(s.head_readout().p_up, WithinAbs(0.5, 1e-15));
    CHECK_THAT(s.head_readout().p_down, WithinAbs(0.5, 1e-15));
}

TEST_CASE("phase gate flips |1_i>|up> only") {
    const long n = 3;
    std::vector<Complex> a(up(n + 1));
    a[0b010] = Complex{0.6};               // |1_1>|down>
    a[0b010 + up(n)] = Complex{0.8};       // |1_1>|up>
    auto s = DenseState::from_amplitudes(n, a);
    s.apply_phase_gate(1);
    CHECK(s.amplitudes()[0b010] == Complex{0.6});
    CHECK(s.amplitudes()[0b010 + up(n)] == Complex{-0.8});
    s.apply_phase_gate(0); // bit 0 clear: no effect
    CHECK(s.amplitudes()[0b010 + up(n)] == Complex{-0.8});
    CHECK(code_of([&] { s.apply_phase_gate(3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("phase gates on every site imprint (-1)^popcount on the head-up half") {
    const long n = 6;
    auto s = DenseState::zero(n);
    s.apply_clock_rotation(hadamard());
    s.apply_head_rotation(hadamard());
    for (long i = 0; i < n; ++i) s.apply_phase_gate(i);
    const double amp = 1.0 / std::sqrt(static_cast<double>(up(n + 1)));
    const auto a = s.amplitudes();
    for (std::size_t p = 0; p < up(n); ++p) {
        const double sign = std::popcount(p) % 2 == 0 ? 1.0 : -1.0;
        CHECK_THAT(a[p].real(), WithinAbs(amp, 1e-15));
        CHECK_THAT(a[p + up(n)].real(), WithinAbs(sign * amp, 1e-15));
    }
}

TEST_CASE("free evolution") {
    const long n = 5;
    std::vector<Complex> ghz(up(n + 1));
    ghz[0] = ghz[up(n + 1) - 1] = Complex{1.0 / std::sqrt(2.0)};
    auto s = DenseState::from_amplitudes(n, ghz);

    auto same = s;
    same.apply_free_evolution(3.0, 5.0, 0.0);
    CHECK(same.amplitudes()[up(n + 1) - 1] == ghz.back());
    same.apply_free_evolution(0.0, 0.0, 7.0);
    CHECK(same.amplitudes()[up(n + 1) - 1] == ghz.back());

    // dw T = 0.1, dw' T = 0.02 -> relative phase 5 * 0.1 + 0.02.
    s.apply_free_evolution(0.1 / 1e-3, 0.02 / 1e-3, 1e-3);
    const Complex rel = s.amplitudes()[up(n + 1) - 1] / s.amplitudes()[0];
    CHECK_THAT(std::arg(rel), WithinAbs(0.52, 1e-12));
    CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-15));
    CHECK(code_of([&] { s.apply_free_evolution(1.0, 1.0, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("non-unitary matrices are rejected") {
    auto s = DenseState::zero(2);
    const Mat2 bad{Complex{1.0}, Complex{1.0}, Complex{0.0}, Complex{1.0}};
    CHECK(code_of([&] { s.apply_clock_rotation(bad); }) == ErrorCode::NonUnitary);
    CHECK(code_of([&] { s.apply_head_rotation(bad); }) == ErrorCode::NonUnitary);
    CHECK(code_of([] { require_unitary(hadamard()); }) == ErrorCode::Ok);
}

TEST_CASE("serial and OpenMP dense states agree") {
    auto a = DenseState::zero(9, kDefaultDenseCap, Parallelism::Serial);
    auto b = DenseState::zero(9, kDefaultDenseCap, Parallelism::OpenMP);
    for (auto *s : {&a, &b}) {
        s->apply_clock_rotation(hadamard());
        s->apply_head_rotation(hadamard());
        for (long i = 0; i < 9; ++i) s->apply_phase_gate(i);
        s->apply_free_evolution(12.0, 3.0, 0.01);
        s->apply_clock_rotation(hadamard());
    }
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        CHECK_THAT(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), WithinAbs(0.0, 1e-14));
    }
    CHECK_THAT(a.head_readout().p_up, WithinRel(b.head_readout().p_up, 1e-12));
}
