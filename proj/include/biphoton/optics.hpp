#pragma once

#include <string>

#include "biphoton/units.hpp"

namespace biphoton
{
/// Sellmeier form n^2 = a + b / (l^2 - c) - d l^2 with l in micrometers.
struct SellmeierCoefficients
{
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    /// Raw formula, no window check.
    double index(double lambda_um) const;
};

/// Negative uniaxial crystal.
struct CrystalSpec
{
    std::string name = "BBO";
    double length = 2e-3;  // m
    SellmeierCoefficients ordinary;
    SellmeierCoefficients extraordinary;  // principal value n_e(pi/2)
    double cut_angle = 0.0;               // rad, pump wave vector vs optic axis
    double walkoff_displacement = 0.0;    // m, lateral pump drift over the full length
    double window_min = 0.20e-6;          // m, Sellmeier validity
    double window_max = 1.10e-6;          // m

    bool in_window(Wavelength lambda) const
    {
        return lambda.meters() >= window_min && lambda.meters() <= window_max;
    }

    /// Throws DomainError on a broken invariant. Does not check the cut angle
    /// against phase matching.
    void validate() const;
};

/// BBO dispersion after Kato (1986), cut angle left at zero.
CrystalSpec bbo_crystal();

double refractive_index_ordinary(const CrystalSpec& crystal, Wavelength lambda);

/// Principal extraordinary index, n_e(theta = pi/2).
double refractive_index_extraordinary_principal(const CrystalSpec& crystal, Wavelength lambda);

/// Index-ellipsoid extraordinary index at angle `theta` from the optic axis:
/// 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2.
double refractive_index_extraordinary(const CrystalSpec& crystal, Wavelength lambda, double theta);

/// Cut angle for collinear degenerate type-I (e -> o + o) phase matching:
/// n_e(theta, lambda_p) = n_o(2 lambda_p). Bisection on [0, pi/2] until the
/// index mismatch is below `index_tolerance`. Throws PhaseMatchingError when
/// n_o(2 lambda_p) lies outside [n_e(lambda_p), n_o(lambda_p)].
double solve_cut_angle(const CrystalSpec& crystal, Wavelength pump, double index_tolerance = 1e-10);

/// Lab angle of an ordinary ray leaving the crystal: sin(ext) = n_o sin(int).
double external_angle(const CrystalSpec& crystal, Wavelength lambda, double internal);

/// Inverse of external_angle.
double internal_angle(const CrystalSpec& crystal, Wavelength lambda, double external);
}  // namespace biphoton
