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
 * Register state stored as a short sum of product states.
 *
 * Every gate of the clock protocol either acts identically on all clock
 * qubits, acts on the head alone, or is diagonal and conditioned on the head.
 * Keeping the head factor basis-aligned before a conditional phase gate means
 * a branch never needs more than two product terms for the noiseless
 * protocol, so memory and time are linear in the number of clock atoms.
 *
 * Invariants maintained after every gate:
 *  - every clock and head factor has unit norm, the amplitude carries scale;
 *  - no branch has |amplitude| below kPruneThreshold;
 *  - no two branches differ in fewer than two factor slots (such pairs are
 *    exactly a single product state and get merged).
 */
#pragma once

#include <cstddef>
#include <vector>

#include "dense_state.hpp"

namespace ghzclock {

using Vec2 = std::array<Complex, 2>;

inline constexpr std::size_t kDefaultRankBound = 4096;
inline constexpr double kPruneThreshold = 1e-14;

struct Branch {
    Complex amplitude{1.0, 0.0};
    std::vector<Vec2> clock_factors;
    Vec2 head_factor{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
};

class BranchProductState {
  public:
    static BranchProductState zero(long n_atoms, std::size_t rank_bound = kDefaultRankBound);
    /// Takes arbitrary branches, normalizes factors into the amplitudes and
    /// merges/prunes. Used for reference states and tests.
    static BranchProductState from_branches(long n_atoms, std::vector<Branch> branches,
                                            std::size_t rank_bound = kDefaultRankBound);

    [[nodiscard]] long n_atoms() const noexcept { return n_atoms_; }
    [[nodiscard]] std::size_t rank() const noexcept { return branches_.size(); }
    [[nodiscard]] std::size_t rank_bound() const noexcept { return rank_bound_; }
    [[nodiscard]] const std::vector<Branch> &branches() const noexcept { return branches_; }

    void apply_clock_rotation(const Mat2 &m);
    void apply_head_rotation(const Mat2 &m);
    /// Splits branches on the head basis, applies Z to `site` in the head-up
    /// part, then merges. Throws Capacity if the rank bound is exceeded.
    void apply_phase_gate(long site);
    void apply_free_evolution(double delta_omega, double delta_omega_head, double duration);

    /// O(rank^2 N) via pairwise product-state overlaps.
    [[nodiscard]] HeadProbabilities head_readout() const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] Complex inner_product(const BranchProductState &other) const;

    /// Expands to 2^(N+1) amplitudes in the dense index convention.
    [[nodiscard]] std::vector<Complex> to_amplitudes() const;

  private:
    BranchProductState(long n_atoms, std::size_t rank_bound)
        : n_atoms_(n_atoms), rank_bound_(rank_bound) {}

    void merge_and_prune();

    long n_atoms_ = 0;
    std::size_t rank_bound_ = kDefaultRankBound;
    std::vector<Branch> branches_;
};

} // namespace ghzclock
