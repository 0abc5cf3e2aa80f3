#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "biphoton/execution.hpp"
#include "biphoton/optics.hpp"

namespace biphoton
{
struct PumpSpec
{
    Wavelength wavelength{325e-9};
    double waist = 34e-6;  // m

    double angular_frequency() const { return wavelength.angular_frequency(); }
    void validate() const;
};

/// Uniform sampling of [min, max] with `points` samples (points >= 2).
struct AxisRange
{
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;

    void validate(const char* what) const;
    std::vector<double> samples() const;
    double step() const { return (max - min) / static_cast<double>(points - 1); }
};

/// |F(nu, theta)|^2 over detuning and external signal angle, row-major with
/// one row per angle.
struct SpectralAngularGrid
{
    std::vector<double> detuning;  // Hz from nu0
    std::vector<double> angle;     // rad, external
    std::vector<double> intensity; // angle.size() * detuning.size(), max-normalized
    double raw_maximum = 0.0;
    std::size_t masked_points = 0; // no conjugate idler or outside the index window

    double at(std::size_t angle_index, std::size_t detuning_index) const
    {
        return intensity[angle_index * detuning.size() + detuning_index];
    }
};

/// Pump wave number n_e(theta_cut, lambda_p) omega_p / c.
double pump_wavenumber(const CrystalSpec& crystal, const PumpSpec& pump);

/// Ordinary wave number n_o(omega) omega / c.
double ordinary_wavenumber(const CrystalSpec& crystal, double omega);

/// Internal idler angle from transverse momentum conservation
/// n(w_i) w_i sin(theta_i) = n(w_s) w_s sin(theta_s), with w_i = w_p - w_s.
/// Returns the magnitude; the idler lies on the side opposite the signal.
double conjugate_angle(double signal_omega, double signal_internal, const CrystalSpec& crystal,
                       const PumpSpec& pump);

/// Longitudinal mismatch k_pz - k_sz - k_iz (rad/m) for a plane-wave pump,
/// with the idler at its conjugate angle.
double longitudinal_mismatch(double signal_omega, double signal_internal,
                             const CrystalSpec& crystal, const PumpSpec& pump);

/// sinc^2(mismatch * L / 2).
double phase_matching_intensity(double mismatch, double length);

/// True when both photons at detuning `nu` lie inside the crystal's index
/// window (and |nu| < nu0).
bool pair_in_window(const CrystalSpec& crystal, const PumpSpec& pump, double nu);

/// Unnormalized sinc^2 at detuning `nu` and external signal angle. Returns
/// nullopt where no conjugate idler exists or a wavelength leaves the window.
std::optional<double> pair_intensity(const CrystalSpec& crystal, const PumpSpec& pump, double nu,
                                     double signal_external);

SpectralAngularGrid intensity_grid(const CrystalSpec& crystal, const PumpSpec& pump,
                                   const AxisRange& detuning, const AxisRange& angle,
                                   Execution exec = Execution::parallel);

/// External signal angle (>= 0) on the zero-mismatch branch at detuning `nu`,
/// or nullopt if the branch does not exist there.
std::optional<double> branch_angle(const CrystalSpec& crystal, const PumpSpec& pump, double nu);

enum class EdgeKind
{
    crossing,  // branch leaves the aperture here
    kinematic  // branch stays inside; limited by nu -> +-nu0
};

struct DetuningEdge
{
    double detuning = 0.0;  // Hz
    EdgeKind kind = EdgeKind::crossing;
};

struct AccessibleRange
{
    DetuningEdge lower;
    DetuningEdge upper;
    double peak_branch_angle = 0.0;  // rad, largest external angle seen on the scan
};

/// Detuning interval whose phase-matched branch lies within
/// |theta_external| <= max_external_angle. Each side is scanned outward from
/// degeneracy until the branch exceeds the aperture; a side that stays
/// inside up to the edge of the index window is reported at the kinematic
/// limit +-nu0.
AccessibleRange accessible_detuning_range(const CrystalSpec& crystal, const PumpSpec& pump,
                                          double max_external_angle,
                                          double scan_step = 0.5 * kTHz);
}  // namespace biphoton
