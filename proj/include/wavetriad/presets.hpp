#pragma once

#include <wavetriad/classify.hpp>

#include <array>
#include <optional>
#include <string_view>

namespace wavetriad {

struct Liquid {
    std::string_view name;
    std::string_view label;
    double mu_over_nu; // cm^3/s^2
};

inline constexpr std::array<Liquid, 4> kLiquids{{
    {"water", "water-8C", 75.0},
    {"glycerine", "glycerine-20C", 47.0},
    {"benzol", "benzol-60C", 27.0},
    {"benzaldehyde", "benzaldehyde-film-20C", 16.0},
}};

inline std::optional<Liquid> find_liquid(std::string_view name) {
    for (const auto& l : kLiquids) {
        if (l.name == name || l.label == name) return l;
    }
    return std::nullopt;
}

// Mode-count calibration. Each row fixes the dispersion, domain, selection
// convention and omega_max used to compare class counts with reference
// tables of (active, neutral) counts.
enum class CalibrationGeometry { sphere, square, rectangle_quarter };

struct CalibrationRow {
    CalibrationGeometry geometry;
    int truncation;
    double omega_max;
    std::size_t target_active;
    std::size_t target_neutral;
};

inline std::string_view to_string(CalibrationGeometry g) {
    switch (g) {
    case CalibrationGeometry::sphere: return "sphere";
    case CalibrationGeometry::square: return "square";
    case CalibrationGeometry::rectangle_quarter: return "rectangle-1/4";
    }
    return "?";
}

// sphere:    rossby_sphere on the triangular domain, rossby selection filter.
// square:    bve_plane rigid_lid on the unit square, standing closure.
// rectangle: the same with Lx = 1, Ly = 4.
// All rows use the per_pair bridge policy.
inline DispersionSpec calibration_spec(CalibrationGeometry g) {
    switch (g) {
    case CalibrationGeometry::sphere: return DispersionSpec::rossby_sphere();
    case CalibrationGeometry::square: return DispersionSpec::bve_plane(BveForm::rigid_lid);
    case CalibrationGeometry::rectangle_quarter:
        return rescale_for_basin(DispersionSpec::bve_plane(BveForm::rigid_lid), 1.0, 4.0);
    }
    return {};
}

inline SpectralDomain calibration_domain(CalibrationGeometry g, int truncation) {
    return {truncation, g == CalibrationGeometry::sphere ? DomainShape::triangular : DomainShape::square};
}

inline ClassifyOptions calibration_options(CalibrationGeometry g) {
    ClassifyOptions o;
    o.bridge_policy = BridgePolicy::per_pair;
    if (g == CalibrationGeometry::sphere) {
        o.rules.sphere_filter = SphereFilter::rossby;
    } else {
        o.rules.closure = Closure::standing;
    }
    return o;
}

// omega_max values sit inside the plateau closest to each target.
inline constexpr std::array<CalibrationRow, 6> kCalibrationRows{{
    {CalibrationGeometry::sphere, 10, 0.031, 4, 3},
    {CalibrationGeometry::sphere, 20, 0.0125, 51, 3},
    {CalibrationGeometry::square, 10, 0.011, 15, 0},
    {CalibrationGeometry::square, 20, 0.013, 53, 0},
    {CalibrationGeometry::rectangle_quarter, 10, 0.0004995, 4, 75},
    {CalibrationGeometry::rectangle_quarter, 20, 0.0000562, 16, 300},
}};

} // namespace wavetriad
