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
 * Optical potentials of the polarization-screw transport lattice.
 *
 * Two counter-rotating circularly polarized standing waves at the magic
 * wavelength are displaced by a phase phi. A species couples to the sigma+
 * and sigma- components with strengths set by its scalar polarizability and
 * the vector/scalar ratio rho:
 *
 *   U(z)  = U0+ cos^2(kz) + U0- cos^2(kz - phi),      k = 2 pi / lambda_m
 *   U0+-  = -(E+-^2 / 4) alpha_s (1 +- rho)
 *
 * Scalar clock states have rho = 0 and stay pinned to the stronger sublattice;
 * head-atom spin states with |rho| ~ 1 follow one sublattice or the other.
 */
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "constants.hpp"

namespace ghzclock {

enum class SpeciesRole { Clock, HeadUp, HeadDown };

[[nodiscard]] std::string_view to_string(SpeciesRole role) noexcept;
[[nodiscard]] SpeciesRole species_role_from_string(std::string_view name);

struct SpeciesOptics {
    std::string name;
    double mass = 0.0;         // kg
    double alpha_scalar = 0.0; // a.u., negative for blue detuning
    double rho = 0.0;          // (M_F / 2F) alpha_vector / alpha_scalar
    SpeciesRole role = SpeciesRole::Clock;
    double F = 0.0;            // head states only
    double M_F = 0.0;

    /// Clock states need rho == 0; head states need |M_F| <= F and F > 0.
    void validate() const;
};

inline constexpr double kDefaultDelta = 0.25;

struct LatticeConfig {
    double lambda_m = 389.9e-9;        // m
    double intensity = 0.0;            // W/m^2, I_L of the transport lattice
    double delta = kDefaultDelta;      // (E+^2 - E-^2) / (E+^2 + E-^2)
    double phi = 0.0;                  // rad
    double transverse_intensity = 0.0; // W/m^2

    void validate() const;
};

struct SublatticeDepths {
    double u0_plus = 0.0;  // J
    double u0_minus = 0.0; // J
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<std::string> violated_constraints;
    double margin = 0.0; // smallest slack of the four strict inequalities
};

struct RequiredIntensity {
    double intensity = 0.0; // W/m^2
    std::string binding_species;
};

struct TrapFrequencies {
    double axial = 0.0;    // rad/s
    double radial_1 = 0.0; // rad/s
    double radial_2 = 0.0; // rad/s

    [[nodiscard]] std::array<double, 3> as_array() const { return {axial, radial_1, radial_2}; }
};

/// Phase at which the moving sublattice sits on top of the stationary one.
inline constexpr double kOverlapPhase = 0.0;
/// Phase at which the clock-atom well is shallowest.
inline constexpr double kHalfwayPhase = 1.5707963267948966;

/// (2 pi hbar / lambda)^2 / (2 M). Throws InvalidArgument on non-positive input.
[[nodiscard]] double recoil_energy(double mass, double lambda_m);

[[nodiscard]] SublatticeDepths sublattice_depths(const LatticeConfig &config,
                                                 const SpeciesOptics &species);

[[nodiscard]] double optical_potential(const LatticeConfig &config,
                                       const SublatticeDepths &depths, double z) noexcept;

/// U(z) on every grid point. Throws InvalidArgument for an empty grid.
[[nodiscard]] std::vector<double> optical_potential_curve(const LatticeConfig &config,
                                                          const SpeciesOptics &species,
                                                          std::span<const double> z_grid);

/// max U - min U over one lattice period, found numerically: a 4096-point
/// scan followed by golden-section refinement of both extrema.
[[nodiscard]] double well_depth(const LatticeConfig &config, const SpeciesOptics &species);

/// 2 pi I_L |alpha_s| (1 + delta rho) / c in Gaussian form, the depth at the
/// overlap phase, evaluated in SI.
[[nodiscard]] double overlap_depth_closed_form(const LatticeConfig &config,
                                               const SpeciesOptics &species);

/// Position of the potential minimum inside [0, lambda_m / 2).
[[nodiscard]] double potential_minimum_position(const LatticeConfig &config,
                                                const SpeciesOptics &species);

/// Checks -1/delta < rho_up < -delta and delta < rho_down < 1/delta.
/// delta <= 0 (or > 1) raises UndefinedFeasibility.
[[nodiscard]] FeasibilityReport transport_feasibility(double rho_up, double rho_down,
                                                      double delta);

/// Smallest I_L for which every species clears depth_factor * E_R in its
/// worst protocol position: head states at overlap, clock atoms halfway.
/// The intensity field of `config` is ignored.
[[nodiscard]] RequiredIntensity min_required_intensity(std::span<const SpeciesOptics> species,
                                                       const LatticeConfig &config,
                                                       double depth_factor = 5.0);

/// Harmonic frequencies at the potential minimum for config.phi. Radial
/// frequencies come from the transverse lattices, which are linearly
/// polarized and see only the scalar polarizability.
[[nodiscard]] TrapFrequencies trap_frequencies(const LatticeConfig &config,
                                               const SpeciesOptics &species);

} // namespace ghzclock
