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

#include "ghzclock/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ghzclock/error.hpp"

namespace ghzclock {

namespace {

constexpr int kScanPoints = 4096;
constexpr double kGoldenTolerance = 1e-12;
// Depths below this fraction of |U0+| + |U0-| are round-off from a
// z-independent potential.
constexpr double kFlatThreshold = 1e-12;

double wavenumber(const LatticeConfig &config) {
    return 2.0 * std::numbers::pi / config.lambda_m;
}

template <class F> double golden_section(F &&f, double a, double b, double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > tolerance; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct Extrema {
    double z_min = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
};

Extrema find_extrema(const LatticeConfig &config, const SublatticeDepths &depths) {
    const double period = config.lambda_m / 2.0;
    const double step = period / kScanPoints;
    int i_min = 0;
    int i_max = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        const double u = optical_potential(config, depths, i * step);
        if (u < lo) {
            lo = u;
            i_min = i;
        }
        if (u > hi) {
            hi = u;
            i_max = i;
        }
    }
    auto potential = [&](double z) { return optical_potential(config, depths, z); };
    auto negated = [&](double z) { return -optical_potential(config, depths, z); };
    const double tol = kGoldenTolerance * period;

    Extrema out;
    out.z_min = golden_section(potential, (i_min - 1) * step, (i_min + 1) * step, tol);
    const double z_max = golden_section(negated, (i_max - 1) * step, (i_max + 1) * step, tol);
    out.u_min = std::min(lo, potential(out.z_min));
    out.u_max = std::max(hi, potential(z_max));
    out.z_min = std::fmod(out.z_min + period, period);
    return out;
}

} // namespace

std::string_view to_string(SpeciesRole role) noexcept {
    switch (role) {
    case SpeciesRole::Clock: return "clock";
    case SpeciesRole::HeadUp: return "head_up";
    case SpeciesRole::HeadDown: return "head_down";
    }
    return "clock";
}

SpeciesRole species_role_from_string(std::string_view name) {
    if (name == "clock") return SpeciesRole::Clock;
    if (name == "head_up") return SpeciesRole::HeadUp;
    if (name == "head_down") return SpeciesRole::HeadDown;
    throw Error(ErrorCode::ConfigRange, "unknown species role '" + std::string(name) + "'");
}

void SpeciesOptics::validate() const {
    require(mass > 0.0 && std::isfinite(mass), ErrorCode::ConfigRange,
            "species '" + name + "': mass must be positive");
    require(std::isfinite(alpha_scalar) && std::isfinite(rho), ErrorCode::ConfigRange,
            "species '" + name + "': polarizability must be finite");
    if (role == SpeciesRole::Clock) {
        require(rho == 0.0, ErrorCode::ConfigRange,
                "species '" + name + "': clock states are scalar, rho must be 0");
    } else {
        require(F > 0.0 && std::abs(M_F) <= F, ErrorCode::ConfigRange,
                "species '" + name + "': head states need F > 0 and |M_F| <= F");
    }
}

void LatticeConfig::validate() const {
    require(lambda_m > 0.0 && std::isfinite(lambda_m), ErrorCode::ConfigRange,
            "lattice wavelength must be positive");
    require(intensity > 0.0 && std::isfinite(intensity), ErrorCode::ConfigRange,
            "lattice intensity must be positive");
    require(std::abs(delta) <= 1.0, ErrorCode::ConfigRange, "|delta| must not exceed 1");
    require(transverse_intensity >= 0.0 && std::isfinite(transverse_intensity),
            ErrorCode::ConfigRange, "transverse intensity must be non-negative");
    require(std::isfinite(phi), ErrorCode::ConfigRange, "phi must be finite");
}

double recoil_energy(double mass, double lambda_m) {
    require(mass > 0.0 && lambda_m > 0.0, ErrorCode::InvalidArgument,
            "recoil energy needs positive mass and wavelength");
    const double momentum = 2.0 * std::numbers::pi * codata().planck_reduced / lambda_m;
    return momentum * momentum / (2.0 * mass);
}

SublatticeDepths sublattice_depths(const LatticeConfig &config, const SpeciesOptics &species) {
    const double e_total_sq = field_squared(config.intensity);
    const double e_plus_sq = 0.5 * (1.0 + config.delta) * e_total_sq;
    const double e_minus_sq = 0.5 * (1.0 - config.delta) * e_total_sq;
    const double alpha = au_to_si_polarizability(species.alpha_scalar);
    return {-0.25 * e_plus_sq * alpha * (1.0 + species.rho),
            -0.25 * e_minus_sq * alpha * (1.0 - species.rho)};
}

double optical_potential(const LatticeConfig &config, const SublatticeDepths &depths,
                         double z) noexcept {
    const double kz = wavenumber(config) * z;
    const double c_plus = std::cos(kz);
    const double c_minus = std::cos(kz - config.phi);
    return depths.u0_plus * c_plus * c_plus + depths.u0_minus * c_minus * c_minus;
}

std::vector<double> optical_potential_curve(const LatticeConfig &config,
                                            const SpeciesOptics &species,
                                            std::span<const double> z_grid) {
    require(!z_grid.empty(), ErrorCode::InvalidArgument, "potential curve needs a non-empty grid");
    const auto depths = sublattice_depths(config, species);
    std::vector<double> out(z_grid.size());
    std::transform(z_grid.begin(), z_grid.end(), out.begin(),
                   [&](double z) { return optical_potential(config, depths, z); });
    return out;
}

double well_depth(const LatticeConfig &config, const SpeciesOptics &species) {
    const auto depths = sublattice_depths(config, species);
    const double scale = std::abs(depths.u0_plus) + std::abs(depths.u0_minus);
    if (scale == 0.0) {
        return 0.0;
    }
    const auto ext = find_extrema(config, depths);
    const double depth = ext.u_max - ext.u_min;
    return depth <= kFlatThreshold * scale ? 0.0 : depth;
}

double overlap_depth_closed_form(const LatticeConfig &config, const SpeciesOptics &species) {
    const double alpha = au_to_si_polarizability(species.alpha_scalar);
    return 0.25 * field_squared(config.intensity) * std::abs(alpha) *
           std::abs(1.0 + config.delta * species.rho);
}

double potential_minimum_position(const LatticeConfig &config, const SpeciesOptics &species) {
    return find_extrema(config, sublattice_depths(config, species)).z_min;
}

FeasibilityReport transport_feasibility(double rho_up, double rho_down, double delta) {
    require(delta > 0.0 && delta <= 1.0, ErrorCode::UndefinedFeasibility,
            "transport criteria are defined only for 0 < delta <= 1");
    struct Constraint {
        const char *label;
        double slack;
    };
    const Constraint constraints[] = {
        {"rho_up > -1/delta", rho_up + 1.0 / delta},
        {"rho_up < -delta", -delta - rho_up},
        {"rho_down > delta", rho_down - delta},
        {"rho_down < 1/delta", 1.0 / delta - rho_down},
    };
    FeasibilityReport report;
    report.margin = std::numeric_limits<double>::infinity();
    for (const auto &c : constraints) {
        report.margin = std::min(report.margin, c.slack);
        if (!(c.slack > 0.0)) {
            report.violated_constraints.emplace_back(c.label);
        }
    }
    report.feasible = report.violated_constraints.empty();
    return report;
}

RequiredIntensity min_required_intensity(std::span<const SpeciesOptics> species,
                                         const LatticeConfig &config, double depth_factor) {
    require(depth_factor >= 0.0, ErrorCode::InvalidArgument, "depth factor must be non-negative");
    require(!species.empty(), ErrorCode::InvalidArgument, "no species given");

    const SpeciesOptics *up = nullptr;
    const SpeciesOptics *down = nullptr;
    for (const auto &s : species) {
        if (s.role == SpeciesRole::HeadUp) up = &s;
        if (s.role == SpeciesRole::HeadDown) down = &s;
    }
    if (up != nullptr && down != nullptr) {
        const auto report = transport_feasibility(up->rho, down->rho, config.delta);
        if (!report.feasible) {
            std::string what = "transport infeasible:";
            for (const auto &v : report.violated_constraints) what += " [" + v + "]";
            throw Error(ErrorCode::InfeasibleTransport, what);
        }
    }

    RequiredIntensity out;
    if (depth_factor == 0.0) {
        return out;
    }
    for (const auto &s : species) {
        LatticeConfig probe = config;
        probe.intensity = 1.0;
        probe.phi = s.role == SpeciesRole::Clock ? kHalfwayPhase : kOverlapPhase;
        const double depth_per_intensity = well_depth(probe, s);
        require(depth_per_intensity > 0.0, ErrorCode::Untrapped,
                "species '" + s.name + "' is untrapped at its worst protocol position");
        const double needed = depth_factor * recoil_energy(s.mass, config.lambda_m) /
                              depth_per_intensity;
        if (needed > out.intensity) {
            out.intensity = needed;
            out.binding_species = s.name;
        }
    }
    return out;
}

TrapFrequencies trap_frequencies(const LatticeConfig &config, const SpeciesOptics &species) {
    const double k = wavenumber(config);
    const double axial_depth = well_depth(config, species);
    require(axial_depth > 0.0, ErrorCode::Untrapped,
            "species '" + species.name + "' is untrapped along the lattice axis");

    // Transverse standing waves are linearly polarized: scalar coupling only.
    const double radial_depth = 0.25 * field_squared(config.transverse_intensity) *
                                std::abs(au_to_si_polarizability(species.alpha_scalar));
    require(radial_depth > 0.0, ErrorCode::Untrapped,
            "species '" + species.name + "' is untrapped radially");

    TrapFrequencies out;
    out.axial = k * std::sqrt(2.0 * axial_depth / species.mass);
    out.radial_1 = k * std::sqrt(2.0 * radial_depth / species.mass);
    out.radial_2 = out.radial_1;
    return out;
}

} // namespace ghzclock
