#include "biphoton/design.hpp"

#include <cmath>

namespace biphoton
{
CollectionModes SourceDesign::modes(double signal_omega, double signal_angle,
                                    double idler_angle) const
{
    CollectionModes m;
    m.signal_angle = signal_angle;
    m.idler_angle = idler_angle;
    m.signal_waist = waist_at(signal_omega);
    m.idler_waist = waist_at(pump.angular_frequency() - signal_omega);
    m.pump_waist = pump.waist;
    m.detection_bandwidth = detection_bandwidth;
    return m;
}

SourceDesign SourceDesign::with_matched_waist(double waist) const
{
    SourceDesign out = *this;
    out.fiber.magnification = select_gamma_train(waist, fiber.reference, fiber);
    out.pump.waist = waist / std::sqrt(2.0);
    return out;
}

void SourceDesign::validate() const
{
    crystal.validate();
    pump.validate();
    fiber.validate();
    grating.validate();
    if (!grating.incidence)
        throw DomainError("grating incidence angle is unresolved");
    if (!(detection_bandwidth > 0.0))
        throw DomainError("detection bandwidth must be positive");
}

SourceDesign default_design()
{
    SourceDesign d;
    d.crystal = bbo_crystal();
    d.pump = PumpSpec{Wavelength(325e-9), 34e-6};
    d.crystal.cut_angle = solve_cut_angle(d.crystal, d.pump.wavelength);
    d.fiber.numerical_aperture = 0.12;
    d.fiber.reference = d.central();
    d.fiber.magnification = select_gamma_train(48e-6, d.fiber.reference, d.fiber);
    d.grating = resolved(GratingSpec{}, d.central());
    return d;
}
}  // namespace biphoton
