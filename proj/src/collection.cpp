#include "biphoton/collection.hpp"

#include <cmath>
#include <sstream>

namespace biphoton
{
void FiberTrainSpec::validate() const
{
    if (!(numerical_aperture > 0.0 && numerical_aperture < 1.0))
        throw DomainError("numerical aperture must lie in (0, 1)");
    if (!(magnification > 0.0))
        throw DomainError("fiber-train magnification must be positive");
}

void CollectionModes::validate() const
{
    if (!(signal_waist > 0.0 && idler_waist > 0.0 && pump_waist > 0.0))
        throw DomainError("mode waists must be positive");
    if (!(detection_bandwidth > 0.0))
        throw DomainError("detection bandwidth must be positive");
}

double fiber_mode_waist(Wavelength lambda, const FiberTrainSpec& fiber)
{
    return lambda.meters() / (kPi * fiber.numerical_aperture);
}

double collection_waist(Wavelength lambda, const FiberTrainSpec& fiber)
{
    return fiber.magnification * fiber_mode_waist(lambda, fiber);
}

double select_gamma_train(double target_waist, Wavelength reference, const FiberTrainSpec& fiber)
{
    if (!(target_waist > 0.0))
        throw DomainError("target waist must be positive");
    return target_waist / fiber_mode_waist(reference, fiber);
}

std::complex<double> TransverseOverlap::operator()(double z) const
{
    const std::complex<double> b(beta * z, q);
    return prefactor * std::exp(b * b / (4.0 * a) - quadratic * z * z);
}

OverlapSetup overlap_setup(double signal_omega, const CollectionModes& modes,
                           const CrystalSpec& crystal, const PumpSpec& pump)
{
    modes.validate();
    const double pump_omega = pump.angular_frequency();
    if (!(signal_omega > 0.0 && signal_omega < pump_omega))
        throw DomainError("signal frequency must lie in (0, omega_p)");
    const double idler_omega = pump_omega - signal_omega;
    const Wavelength signal = Wavelength::from_angular_frequency(signal_omega);
    const Wavelength idler = Wavelength::from_angular_frequency(idler_omega);

    const double ts = internal_angle(crystal, signal, modes.signal_angle);
    const double ti = internal_angle(crystal, idler, modes.idler_angle);
    const double ks = ordinary_wavenumber(crystal, signal_omega);
    const double ki = ordinary_wavenumber(crystal, idler_omega);
    const double kp = pump_wavenumber(crystal, pump);

    const double wp2 = modes.pump_waist * modes.pump_waist;
    const double ws2 = modes.signal_waist * modes.signal_waist;
    const double wi2 = modes.idler_waist * modes.idler_waist;
    const double drift = crystal.walkoff_displacement / crystal.length;  // pump axis x = drift * z
    const double ss = std::sin(ts), cs = std::cos(ts);
    const double si = std::sin(ti), ci = std::cos(ti);

    OverlapSetup setup;
    setup.length = crystal.length;
    setup.mismatch = kp - ks * cs - ki * ci;

    TransverseOverlap& t = setup.transverse;
    t.a = 1.0 / wp2 + cs * cs / ws2 + ci * ci / wi2;
    t.a_y = 1.0 / wp2 + 1.0 / ws2 + 1.0 / wi2;
    t.beta = 2.0 * drift / wp2 + 2.0 * ss * cs / ws2 + 2.0 * si * ci / wi2;
    t.q = -(ks * ss + ki * si);
    t.quadratic = drift * drift / wp2 + ss * ss / ws2 + si * si / wi2;
    // Three power-normalized modes, sqrt(2/pi)/W each, times the x and y
    // Gaussian integrals sqrt(pi/a) sqrt(pi/a_y).
    const double norm = std::pow(2.0 / kPi, 1.5) /
                        (modes.pump_waist * modes.signal_waist * modes.idler_waist);
    t.prefactor = norm * kPi / std::sqrt(t.a * t.a_y);
    return setup;
}

std::complex<double> integrate_overlap(const OverlapSetup& setup, const SimpsonOptions& opts)
{
    const double half = 0.5 * setup.length;
    return adaptive_simpson(
        [&](double z) {
            return setup.transverse(z) * std::polar(1.0, setup.mismatch * z);
        },
        -half, half, opts);
}

std::complex<double> overlap_amplitude(double signal_omega, const CollectionModes& modes,
                                       const CrystalSpec& crystal, const PumpSpec& pump,
                                       const SimpsonOptions& opts)
{
    return integrate_overlap(overlap_setup(signal_omega, modes, crystal, pump), opts);
}

double coincidence_rate(double signal_omega, const CollectionModes& modes,
                        const CrystalSpec& crystal, const PumpSpec& pump,
                        const SimpsonOptions& opts)
{
    return modes.detection_bandwidth *
           std::norm(overlap_amplitude(signal_omega, modes, crystal, pump, opts));
}

std::vector<std::string> paraxial_warnings(const CollectionModes& modes, Wavelength signal,
                                           Wavelength idler, const CrystalSpec& crystal,
                                           const PumpSpec& pump)
{
    std::vector<std::string> out;
    auto check = [&](const char* name, double waist, Wavelength lambda) {
        const double rayleigh = kPi * waist * waist / lambda.meters();
        if (rayleigh <= crystal.length)
        {
            std::ostringstream msg;
            msg << name << " mode (W = " << waist / kMicron << " um at " << lambda.micrometers()
                << " um) has Rayleigh length " << rayleigh * 1e3 << " mm <= crystal length "
                << crystal.length * 1e3 << " mm; collimated-mode overlap model is outside its "
                << "validity (tight focus)";
            out.push_back(msg.str());
        }
    };
    check("pump", modes.pump_waist, pump.wavelength);
    check("signal", modes.signal_waist, signal);
    check("idler", modes.idler_waist, idler);
    return out;
}
}  // namespace biphoton
