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
 * Physical constants and the single SI conversion boundary.
 *
 * Everything inside the library is SI. Light-shift expressions that are
 * naturally written in Gaussian units (I = c E^2 / 8pi, U = -(E/2)^2 alpha)
 * are translated here and nowhere else.
 */
#pragma once

#include <numbers>

namespace ghzclock {

/// CODATA 2018 values. The atomic unit of polarizability is derived from the
/// other entries rather than stored, so the table is consistent by
/// construction; validate() re-checks it for user-built tables.
struct ConstantsTable {
    double planck_reduced = 1.054571817e-34;      // J s
    double speed_of_light = 299792458.0;          // m/s
    double vacuum_permittivity = 8.8541878128e-12; // F/m
    double boltzmann = 1.380649e-23;              // J/K
    double atomic_mass_unit = 1.66053906660e-27;  // kg
    double bohr_radius = 5.29177210903e-11;       // m
    double polarizability_au_in_si =
        4.0 * std::numbers::pi * 8.8541878128e-12 * 5.29177210903e-11 *
        5.29177210903e-11 * 5.29177210903e-11; // C m^2 / V
    double length_au_in_si = 5.29177210903e-11;   // m

    /// Throws ConfigRange if an entry is non-positive or the polarizability
    /// unit disagrees with 4 pi eps0 a0^3 beyond 1e-12 relative.
    void validate() const;
};

[[nodiscard]] const ConstantsTable &codata() noexcept;

/// Polarizability in atomic units -> C m^2 / V. Sign preserved.
[[nodiscard]] double au_to_si_polarizability(double alpha_au,
                                             const ConstantsTable &k = codata()) noexcept;

/// Squared field amplitude E^2 (V^2/m^2) of a standing-wave component that
/// carries the given share of the intensity I_L = c eps0 (E+^2 + E-^2) / 2.
[[nodiscard]] double field_squared(double intensity, const ConstantsTable &k = codata()) noexcept;

[[nodiscard]] inline double kw_per_cm2_to_si(double value) noexcept { return value * 1.0e7; }
[[nodiscard]] inline double si_to_kw_per_cm2(double value) noexcept { return value * 1.0e-7; }

} // namespace ghzclock
