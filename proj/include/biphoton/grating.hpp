#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "biphoton/units.hpp"

namespace biphoton
{
enum class EfficiencyMode
{
    ideal,    // unit efficiency at every wavelength
    anchored  // piecewise-linear through measured anchor points
};

std::string_view to_string(EfficiencyMode mode);
EfficiencyMode efficiency_mode_from_string(std::string_view text);

struct EfficiencyAnchor
{
    double wavelength = 0.0;  // m
    double efficiency = 0.0;  // [0, 1]
};

/// First-order diffraction grating behind a relay of angular magnification
/// gamma. sin(theta0) - sin(gamma theta_c) = 2 pi c D / omega.
struct GratingSpec
{
    double groove_density = 600e3;        // lines per meter
    std::optional<double> incidence;      // theta0, rad; unset = anchor the central wavelength on axis
    double magnification = 1.05;          // gamma
    std::vector<EfficiencyAnchor> anchors{{500e-9, 0.25}, {750e-9, 0.70}};
    EfficiencyMode mode = EfficiencyMode::anchored;

    void validate() const;
};

/// Incidence angle that puts `central` on the fiber axis: sin(theta0) = lambda D.
double solve_theta0(double groove_density, Wavelength central);

/// Copy of `grating` with theta0 filled in (solved at `central` if unset).
GratingSpec resolved(GratingSpec grating, Wavelength central);

/// Crystal-side external collection angle for frequency omega. Requires a
/// resolved incidence angle. Throws DomainError for an evanescent order.
double angle_for_frequency(double omega, const GratingSpec& grating);

/// Inverse of angle_for_frequency.
double frequency_for_angle(double theta, const GratingSpec& grating);

/// d theta_c / d lambda = -D / (gamma cos(gamma theta_c)).
double angular_dispersion(Wavelength lambda, const GratingSpec& grating);

/// Diffraction efficiency at `lambda` for the grating's mode.
double efficiency(Wavelength lambda, const GratingSpec& grating);

/// Both photons of the pair must diffract: eff(lambda_s) * eff(lambda_i).
double pair_efficiency(double signal_omega, double pump_omega, const GratingSpec& grating);
}  // namespace biphoton
