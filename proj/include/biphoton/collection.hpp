#pragma once

#include <complex>
#include <string>
#include <vector>

#include "biphoton/optics.hpp"
#include "biphoton/phasematching.hpp"
#include "biphoton/quadrature.hpp"

namespace biphoton
{
/// Single-mode fiber and the relay that images it onto the crystal.
struct FiberTrainSpec
{
    double numerical_aperture = 0.12;
    double magnification = 1.0;        // Gamma: crystal-plane waist / fiber waist
    Wavelength reference{650e-9};      // wavelength at which Gamma was chosen

    void validate() const;
};

/// Gaussian collection modes seen from the crystal. Angles are external lab
/// angles in the plane of the noncollinear geometry, signed: the signal and
/// idler of a phase-matched pair have opposite signs.
struct CollectionModes
{
    double signal_angle = 0.0;  // rad
    double idler_angle = 0.0;   // rad
    double signal_waist = 48e-6;
    double idler_waist = 48e-6;
    double pump_waist = 34e-6;
    double detection_bandwidth = kTwoPi * 3.2e12;  // rad/s

    void validate() const;
};

/// Fundamental-mode waist of the fiber, lambda / (pi NA).
double fiber_mode_waist(Wavelength lambda, const FiberTrainSpec& fiber);

/// Collection waist at the crystal, Gamma * W_f(lambda).
double collection_waist(Wavelength lambda, const FiberTrainSpec& fiber);

/// Gamma that maps the fiber mode to `target_waist` at `reference`.
double select_gamma_train(double target_waist, Wavelength reference, const FiberTrainSpec& fiber);

/// Closed-form x-y overlap of the pump and the conjugated signal and idler
/// modes at depth z, for power-normalized Gaussians:
///   A(z) = prefactor * exp((beta z + i q)^2 / (4 a) - quadratic z^2)
struct TransverseOverlap
{
    double a = 0.0;          // x curvature, 1/m^2
    double a_y = 0.0;        // y curvature, 1/m^2
    double beta = 0.0;       // x-z coupling from tilts and pump drift, 1/m^3
    double q = 0.0;          // transverse phase gradient -(k_s sin + k_i sin), rad/m
    double quadratic = 0.0;  // z^2 coefficient from axis separation, 1/m^2
    double prefactor = 0.0;

    std::complex<double> operator()(double z) const;
};

/// Everything the z-integral needs for one signal frequency.
struct OverlapSetup
{
    TransverseOverlap transverse;
    double mismatch = 0.0;  // k_p - k_s cos - k_i cos along the pump axis, rad/m
    double length = 0.0;
};

OverlapSetup overlap_setup(double signal_omega, const CollectionModes& modes,
                           const CrystalSpec& crystal, const PumpSpec& pump);

/// Integral of A(z) exp(i mismatch z) over the crystal, -L/2 .. L/2.
std::complex<double> integrate_overlap(const OverlapSetup& setup, const SimpsonOptions& opts = {});

/// Biphoton amplitude into the given mode pair; the idler frequency is
/// omega_p - omega_s.
std::complex<double> overlap_amplitude(double signal_omega, const CollectionModes& modes,
                                       const CrystalSpec& crystal, const PumpSpec& pump,
                                       const SimpsonOptions& opts = {});

/// Coincidence rate (arbitrary units): detection bandwidth * |amplitude|^2.
double coincidence_rate(double signal_omega, const CollectionModes& modes,
                        const CrystalSpec& crystal, const PumpSpec& pump,
                        const SimpsonOptions& opts = {});

/// Paraxial guard: one message per mode whose Rayleigh length pi W^2 / lambda
/// does not exceed the crystal length.
std::vector<std::string> paraxial_warnings(const CollectionModes& modes, Wavelength signal,
                                           Wavelength idler, const CrystalSpec& crystal,
                                           const PumpSpec& pump);
}  // namespace biphoton
