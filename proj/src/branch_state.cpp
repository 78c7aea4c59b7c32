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

#include "ghzclock/branch_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghzclock/error.hpp"

namespace ghzclock {

namespace {

// Factors closer than this (residual norm) to a phase multiple are colinear.
constexpr double kColinearTolerance = 1e-12;

inline Complex dot(const Vec2 &u, const Vec2 &v) noexcept {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

inline Vec2 mat_vec(const Mat2 &m, const Vec2 &v) noexcept {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

/// Normalizes v in place and returns its former norm.
inline double normalize(Vec2 &v) noexcept {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    if (n > 0.0) {
        v[0] /= n;
        v[1] /= n;
    }
    return n;
}

/// If v = c u for unit u, v (up to kColinearTolerance), stores c and returns true.
inline bool colinear(const Vec2 &u, const Vec2 &v, Complex &ratio) noexcept {
    const Complex c = dot(u, v);
    const Complex r0 = v[0] - c * u[0];
    const Complex r1 = v[1] - c * u[1];
    if (std::norm(r0) + std::norm(r1) > kColinearTolerance * kColinearTolerance) {
        return false;
    }
    ratio = c;
    return true;
}

/// Tries to fold `b` into `a`. Succeeds when the two products agree (up to
/// phase) in every slot but at most one; slot -1 is the head.
bool try_merge(Branch &a, const Branch &b) {
    constexpr long kNone = -2;
    long differing = kNone;
    Complex phase{1.0, 0.0};
    Complex ratio;

    if (colinear(a.head_factor, b.head_factor, ratio)) {
        phase *= ratio;
    } else {
        differing = -1;
    }
    const auto n = static_cast<long>(a.clock_factors.size());
    for (long s = 0; s < n; ++s) {
        const auto idx = static_cast<std::size_t>(s);
        if (colinear(a.clock_factors[idx], b.clock_factors[idx], ratio)) {
            phase *= ratio;
        } else if (differing == kNone) {
            differing = s;
        } else {
            return false;
        }
    }

    const Complex weight = b.amplitude * phase;
    if (differing == kNone) {
        a.amplitude += weight;
        return true;
    }
    Vec2 &slot = differing == -1 ? a.head_factor
                                 : a.clock_factors[static_cast<std::size_t>(differing)];
    const Vec2 &other = differing == -1 ? b.head_factor
                                        : b.clock_factors[static_cast<std::size_t>(differing)];
    Vec2 combined{a.amplitude * slot[0] + weight * other[0],
                  a.amplitude * slot[1] + weight * other[1]};
    const double n_combined = normalize(combined);
    a.amplitude = n_combined;
    if (n_combined > 0.0) {
        slot = combined;
    }
    return true;
}

} // namespace

BranchProductState BranchProductState::zero(long n_atoms, std::size_t rank_bound) {
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "register needs at least one clock atom");
    require(rank_bound >= 1, ErrorCode::InvalidArgument, "rank bound must be at least 1");
    BranchProductState state(n_atoms, rank_bound);
    Branch b;
    b.clock_factors.assign(static_cast<std::size_t>(n_atoms),
                           Vec2{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    state.branches_.push_back(std::move(b));
    return state;
}

BranchProductState BranchProductState::from_branches(long n_atoms, std::vector<Branch> branches,
                                                     std::size_t rank_bound) {
    require(n_atoms >= 1, ErrorCode::InvalidProtocolSize, "register needs at least one clock atom");
    BranchProductState state(n_atoms, rank_bound);
    for (auto &b : branches) {
        require(b.clock_factors.size() == static_cast<std::size_t>(n_atoms),
                ErrorCode::InvalidArgument, "branch has the wrong number of clock factors");
        b.amplitude *= normalize(b.head_factor);
        for (auto &f : b.clock_factors) {
            b.amplitude *= normalize(f);
        }
    }
    state.branches_ = std::move(branches);
    state.merge_and_prune();
    return state;
}

void BranchProductState::merge_and_prune() {
    std::erase_if(branches_, [](const Branch &b) { return std::abs(b.amplitude) < kPruneThreshold; });
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < branches_.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < branches_.size(); ++j) {
                if (try_merge(branches_[i], branches_[j])) {
                    branches_.erase(branches_.begin() + static_cast<std::ptrdiff_t>(j));
                    if (std::abs(branches_[i].amplitude) < kPruneThreshold) {
                        branches_.erase(branches_.begin() + static_cast<std::ptrdiff_t>(i));
                    }
                    merged = true;
                    break;
                }
            }
        }
    }
    require(branches_.size() <= rank_bound_, ErrorCode::Capacity,
            "branch rank " + std::to_string(branches_.size()) + " exceeds bound " +
                std::to_string(rank_bound_));
}

void BranchProductState::apply_clock_rotation(const Mat2 &m) {
    require_unitary(m);
    for (auto &b : branches_) {
        for (auto &f : b.clock_factors) {
            f = mat_vec(m, f);
        }
    }
}

void BranchProductState::apply_head_rotation(const Mat2 &m) {
    require_unitary(m);
    for (auto &b : branches_) {
        b.head_factor = mat_vec(m, b.head_factor);
    }
}

void BranchProductState::apply_phase_gate(long site) {
    require(site >= 0 && site < n_atoms_, ErrorCode::InvalidArgument,
            "phase gate site " + std::to_string(site) + " outside register");
    const auto s = static_cast<std::size_t>(site);
    const Vec2 down{Complex{1.0}, Complex{0.0}};
    const Vec2 up{Complex{0.0}, Complex{1.0}};

    std::vector<Branch> split;
    split.reserve(2 * branches_.size());
    for (auto &b : branches_) {
        const Complex amp_down = b.amplitude * b.head_factor[0];
        const Complex amp_up = b.amplitude * b.head_factor[1];
        const bool keep_down = std::abs(amp_down) >= kPruneThreshold;
        const bool keep_up = std::abs(amp_up) >= kPruneThreshold;
        if (keep_down && keep_up) {
            Branch upper = b;
            upper.amplitude = amp_up;
            upper.head_factor = up;
            upper.clock_factors[s][1] = -upper.clock_factors[s][1];
            b.amplitude = amp_down;
            b.head_factor = down;
            split.push_back(std::move(b));
            split.push_back(std::move(upper));
        } else if (keep_down) {
            b.amplitude = amp_down;
            b.head_factor = down;
            split.push_back(std::move(b));
        } else if (keep_up) {
            b.amplitude = amp_up;
            b.head_factor = up;
            b.clock_factors[s][1] = -b.clock_factors[s][1];
            split.push_back(std::move(b));
        }
    }
    branches_ = std::move(split);
    merge_and_prune();
}

void BranchProductState::apply_free_evolution(double delta_omega, double delta_omega_head,
                                              double duration) {
    require(duration >= 0.0, ErrorCode::InvalidArgument, "free evolution time must be >= 0");
    const Complex clock_phase = std::polar(1.0, delta_omega * duration);
    const Complex head_phase = std::polar(1.0, delta_omega_head * duration);
    for (auto &b : branches_) {
        for (auto &f : b.clock_factors) {
            f[1] *= clock_phase;
        }
        b.head_factor[1] *= head_phase;
    }
}

namespace {

Complex clock_overlap(const Branch &a, const Branch &b) {
    Complex product{1.0, 0.0};
    for (std::size_t s = 0; s < a.clock_factors.size(); ++s) {
        product *= dot(a.clock_factors[s], b.clock_factors[s]);
    }
    return product;
}

} // namespace

HeadProbabilities BranchProductState::head_readout() const {
    Complex p_down{0.0};
    Complex p_up{0.0};
    for (const auto &a : branches_) {
        for (const auto &b : branches_) {
            const Complex w = std::conj(a.amplitude) * b.amplitude * clock_overlap(a, b);
            p_down += w * std::conj(a.head_factor[0]) * b.head_factor[0];
            p_up += w * std::conj(a.head_factor[1]) * b.head_factor[1];
        }
    }
    return {p_down.real(), p_up.real()};
}

double BranchProductState::norm() const {
    const auto p = head_readout();
    return std::sqrt(std::max(0.0, p.p_down + p.p_up));
}

Complex BranchProductState::inner_product(const BranchProductState &other) const {
    require(other.n_atoms_ == n_atoms_, ErrorCode::InvalidArgument,
            "inner product of registers with different sizes");
    Complex s{0.0};
    for (const auto &a : branches_) {
        for (const auto &b : other.branches_) {
            s += std::conj(a.amplitude) * b.amplitude * dot(a.head_factor, b.head_factor) *
                 clock_overlap(a, b);
        }
    }
    return s;
}

std::vector<Complex> BranchProductState::to_amplitudes() const {
    require(n_atoms_ <= 30, ErrorCode::Capacity, "register too large to expand densely");
    const std::size_t clock_dim = std::size_t{1} << n_atoms_;
    std::vector<Complex> out(2 * clock_dim);
    std::vector<Complex> product(clock_dim);
    for (const auto &b : branches_) {
        product[0] = b.amplitude;
        std::size_t filled = 1;
        for (const auto &f : b.clock_factors) {
            for (std::size_t e = 0; e < filled; ++e) {
                product[e + filled] = product[e] * f[1];
                product[e] *= f[0];
            }
            filled *= 2;
        }
        for (std::size_t p = 0; p < clock_dim; ++p) {
            out[p] += product[p] * b.head_factor[0];
            out[p + clock_dim] += product[p] * b.head_factor[1];
        }
    }
    return out;
}

} // namespace ghzclock
