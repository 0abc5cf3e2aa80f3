#pragma once

#include "biphoton/collection.hpp"
#include "biphoton/grating.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/phasematching.hpp"
#include "biphoton/quadrature.hpp"

namespace biphoton
{
/// A fully resolved source: cut angle solved, fiber-train magnification
/// chosen, grating incidence fixed. Collection waists follow the fiber mode,
/// W(lambda) = Gamma lambda / (pi NA).
struct SourceDesign
{
    CrystalSpec crystal;
    PumpSpec pump;
    FiberTrainSpec fiber;
    GratingSpec grating;
    double detection_bandwidth = kTwoPi * 3.2e12;  // rad/s
    SimpsonOptions quadrature;

    /// Degenerate wavelength 2 lambda_p, the grating's on-axis wavelength.
    Wavelength central() const { return Wavelength(2.0 * pump.wavelength.meters()); }

    double waist_at(double omega) const
    {
        return collection_waist(Wavelength::from_angular_frequency(omega), fiber);
    }

    /// Modes for a signal at `signal_omega` collected at the given external
    /// angles; waists follow the fiber mode at each photon's wavelength.
    CollectionModes modes(double signal_omega, double signal_angle, double idler_angle) const;

    /// Copy with W_s = W_i = `waist` at the fiber reference wavelength and
    /// W_p = waist / sqrt(2), Gamma re-selected.
    SourceDesign with_matched_waist(double waist) const;

    void validate() const;
};

/// Default broadband single-mode source: 2 mm
/// BBO cut for collinear degenerate type-I at a 325 nm pump (W_p = 34 um),
/// collection waists 48 um at 650 nm through an NA 0.12 fiber, 600/mm
/// grating behind a 1.05x relay, efficiency anchors 0.25 @ 500 nm and
/// 0.70 @ 750 nm, 50 um pump walk-off.
SourceDesign default_design();
}  // namespace biphoton
