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
 * Portable seeding and uniform deviates.
 *
 * std::uniform_real_distribution and friends are implementation-defined, so
 * results would differ between standard libraries. Everything seeded in this
 * project goes through these helpers instead.
 */
#pragma once

#include <cstdint>
#include <random>

namespace ghzclock {

/// SplitMix64 finalizer; decorrelates consecutive integers.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the index-th independent stream derived from a base seed.
[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Uniform double in [0, 1) from the top 53 bits.
[[nodiscard]] inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace ghzclock
