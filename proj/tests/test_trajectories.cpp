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

#include <cmath>
#include <limits>

#include "ghzclock/random.hpp"
#include "ghzclock/trajectories.hpp"

using namespace ghzclock;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("no decoherence, no scattering") {
    const auto schedule = build_schedule(4, 20e-6, 10e-6, 1e-3);
    const DecoherenceParams none{kInf, kInf, 0.0};
    const Detunings d{120.0, 0.0};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto t = sample_noisy_trajectory(4, schedule, none, d, seed);
        CHECK_FALSE(t.scattered);
        CHECK_THAT(t.p_up, WithinAbs(std::pow(std::sin(4 * 120.0 * 1e-3 / 2.0), 2), 1e-12));
    }
    const auto batch = omp::run_trajectories(4, schedule, none, 0.3, 1, 1000);
    CHECK(batch.scattered == 0);
    CHECK(batch.mean_p_up == 0.3);
}

TEST_CASE("scattered fraction matches 1 - survival") {
    struct Setting {
        long n;
        double ramsey;
    };
    const DecoherenceParams p{10.0, 8.0, 0.0};
    for (auto [n, ramsey] : {Setting{10, 0.5}, Setting{100, 0.05}, Setting{1000, 1e-3}}) {
        const auto schedule = build_schedule(n, 20e-6, 10e-6, ramsey);
        const double q = 1.0 - survival_probability(schedule, n, p);
        const long m = 100000;
        const auto batch = omp::run_trajectories(n, schedule, p, 0.0, 2024, m);
        const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(m));
        INFO("n " << n << " q " << q << " mc " << batch.scattered_fraction());
        CHECK(std::abs(batch.scattered_fraction() - q) <= 3.0 * sigma);
    }
}

TEST_CASE("trajectories are reproducible and thread-independent") {
    const auto schedule = build_schedule(50, 20e-6, 10e-6, 0.1);
    const DecoherenceParams p{10.0, 8.0, 0.5};
    const auto a = serial::run_trajectories(50, schedule, p, 0.25, 77, 5000);
    const auto b = omp::run_trajectories(50, schedule, p, 0.25, 77, 5000);
    const auto c = omp::run_trajectories(50, schedule, p, 0.25, 77, 5000);
    CHECK(a.scattered == b.scattered);
    CHECK(a.mean_p_up == b.mean_p_up);
    CHECK(b.scattered == c.scattered);
    CHECK(a.scattered > 0);

    const auto t1 = sample_noisy_trajectory(50, schedule, p, {}, 9);
    const auto t2 = sample_noisy_trajectory(50, schedule, p, {}, 9);
    CHECK(t1.scattered == t2.scattered);
    CHECK(t1.p_up == t2.p_up);
}

TEST_CASE("scattered trajectories read out a fair coin") {
    const auto schedule = build_schedule(3, 20e-6, 10e-6, 1.0);
    const DecoherenceParams heavy{1e-6, 1e-6, 0.0};
    const auto t = sample_noisy_trajectory(3, schedule, heavy, {}, 1);
    CHECK(t.scattered);
    CHECK(t.p_up == 0.5);
    REQUIRE(t.first_event.has_value());
    CHECK(t.first_event->time >= 0.0);
    CHECK(t.first_event->time < schedule.total_duration);

    const DecoherenceParams infinite{10.0, 10.0, kInf};
    const auto e = sample_first_event(3, schedule, infinite, 4);
    REQUIRE(e.has_value());
    CHECK(e->time == 0.0);
}

TEST_CASE("event targets follow the rates") {
    const auto schedule = build_schedule(10, 0.0, 0.0, 1e3);
    const DecoherenceParams p{10.0, 10.0, 1.0}; // clock 1/s, head 0.1/s, extra 1/s
    long clock = 0, head = 0, extra = 0;
    const long m = 20000;
    for (long i = 0; i < m; ++i) {
        const auto e = sample_first_event(10, schedule, p, stream_seed(5, static_cast<std::uint64_t>(i)));
        REQUIRE(e.has_value());
        if (e->target == NoiseTarget::ClockAtom) {
            ++clock;
            REQUIRE(e->clock_index.has_value());
            CHECK(*e->clock_index >= 0);
            CHECK(*e->clock_index < 10);
        } else if (e->target == NoiseTarget::HeadAtom) {
            ++head;
        } else {
            ++extra;
        }
    }
    const auto share = [&](long k) { return static_cast<double>(k) / static_cast<double>(m); };
    CHECK_THAT(share(clock), WithinAbs(1.0 / 2.1, 0.02));
    CHECK_THAT(share(head), WithinAbs(0.1 / 2.1, 0.01));
    CHECK_THAT(share(extra), WithinAbs(1.0 / 2.1, 0.02));
}

TEST_CASE("stream seeds are distinct") {
    CHECK(stream_seed(1, 0) != stream_seed(1, 1));
    CHECK(stream_seed(1, 0) != stream_seed(2, 0));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
