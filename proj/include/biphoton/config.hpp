#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/design.hpp"
#include "biphoton/grating.hpp"
#include "biphoton/phasematching.hpp"

namespace biphoton
{
/// Which transformed spectra a run produces.
enum class EfficiencySelection
{
    ideal,
    anchored,
    both
};

std::string_view to_string(EfficiencySelection selection);
EfficiencySelection efficiency_selection_from_string(std::string_view text);
std::vector<EfficiencyMode> modes_of(EfficiencySelection selection);

struct GridConfig
{
    AxisRange xmap_detuning{-200e12, 500e12, 1000};
    AxisRange xmap_angle{radians(-10.0), radians(10.0), 600};
    AxisRange spectrum{-200e12, 200e12, 801};
    int padding = 8;
    double aperture_half_angle = radians(9.5);
};

struct SweepConfig
{
    double waist_min = 20e-6;
    double waist_max = 600e-6;
    std::size_t waist_points = 24;
    double rate_waist_min = 100e-6;
    double rate_waist_max = 500e-6;
    std::size_t rate_points = 9;
    double gamma_min = 0.9;
    double gamma_max = 1.2;
    double gamma_tolerance = 1e-3;
};

/// Everything a run needs. Unset optionals are resolved when the design is
/// built: cut angle by phase matching, Gamma from the target waist, grating
/// incidence from the central wavelength.
struct RunConfig
{
    CrystalSpec crystal = bbo_crystal();
    std::optional<double> cut_angle;
    PumpSpec pump;
    FiberTrainSpec fiber;
    double target_waist = 48e-6;
    std::optional<double> fiber_magnification;
    GratingSpec grating;
    EfficiencySelection efficiency = EfficiencySelection::both;
    double detection_bandwidth = kTwoPi * 3.2e12;
    SimpsonOptions quadrature;
    GridConfig grids;
    SweepConfig sweeps;
    std::string output_directory = "out";

    /// "section.key" names that were set explicitly rather than defaulted.
    std::set<std::string> explicit_keys;

    /// Resolve derived quantities; throws ConfigError naming the section.
    SourceDesign design() const;
};

/// Defaults match default_design().
RunConfig default_config();

/// Parse the sectioned key-value format. Unspecified keys keep defaults.
/// Throws ConfigError with "line N" for syntax errors and a dotted field
/// path for invariant violations.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Every key with its effective value; defaulted keys carry "# default".
/// Parsing the dump reproduces the same configuration exactly.
std::string effective_config_dump(const RunConfig& config);
}  // namespace biphoton
