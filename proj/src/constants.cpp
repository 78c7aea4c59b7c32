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

#include "ghzclock/constants.hpp"

#include <cmath>
#include <numbers>

#include "ghzclock/error.hpp"

namespace ghzclock {

void ConstantsTable::validate() const {
    const double entries[] = {planck_reduced,   speed_of_light,          vacuum_permittivity,
                              boltzmann,        atomic_mass_unit,        bohr_radius,
                              length_au_in_si,  polarizability_au_in_si};
    for (double value : entries) {
        require(value > 0.0, ErrorCode::ConfigRange, "constants table entries must be positive");
    }
    const double expected =
        4.0 * std::numbers::pi * vacuum_permittivity * bohr_radius * bohr_radius * bohr_radius;
    require(std::abs(polarizability_au_in_si - expected) <= 1e-12 * expected,
            ErrorCode::ConfigRange,
            "polarizability_au_in_si is inconsistent with 4 pi eps0 a0^3");
}

const ConstantsTable &codata() noexcept {
    static const ConstantsTable table{};
    return table;
}

double au_to_si_polarizability(double alpha_au, const ConstantsTable &k) noexcept {
    return alpha_au * k.polarizability_au_in_si;
}

double field_squared(double intensity, const ConstantsTable &k) noexcept {
    // I = c eps0 E^2 / 2 for a field of amplitude E.
    return 2.0 * intensity / (k.speed_of_light * k.vacuum_permittivity);
}

} // namespace ghzclock
