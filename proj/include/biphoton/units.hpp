#pragma once

#include <numbers>

#include "biphoton/errors.hpp"

namespace biphoton
{
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kTHz = 1e12;
inline constexpr double kMicron = 1e-6;
inline constexpr double kNanometer = 1e-9;
inline constexpr double kFemtosecond = 1e-15;

inline constexpr double degrees(double radians) { return radians * 180.0 / kPi; }
inline constexpr double radians(double degrees) { return degrees * kPi / 180.0; }

/// Vacuum wavelength in meters.
class Wavelength
{
  public:
    explicit Wavelength(double meters) : meters_(meters)
    {
        if (!(meters > 0.0))
            throw DomainError("wavelength must be positive");
    }

    static Wavelength from_angular_frequency(double omega)
    {
        if (!(omega > 0.0))
            throw DomainError("angular frequency must be positive");
        return Wavelength(kTwoPi * kSpeedOfLight / omega);
    }

    static Wavelength from_frequency(double hertz)
    {
        if (!(hertz > 0.0))
            throw DomainError("frequency must be positive");
        return Wavelength(kSpeedOfLight / hertz);
    }

    double meters() const { return meters_; }
    double micrometers() const { return meters_ / kMicron; }
    double frequency() const { return kSpeedOfLight / meters_; }
    double angular_frequency() const { return kTwoPi * kSpeedOfLight / meters_; }

    /// Detuning nu - nu0 (Hz) from the degenerate frequency nu0 = omega_p / 4 pi.
    double detuning_from_degenerate(Wavelength pump) const
    {
        return frequency() - 0.5 * pump.frequency();
    }

    /// Signal wavelength at detuning `nu` (Hz) from the degenerate frequency.
    static Wavelength at_detuning(Wavelength pump, double nu)
    {
        return from_frequency(0.5 * pump.frequency() + nu);
    }

    friend bool operator==(Wavelength, Wavelength) = default;

  private:
    double meters_;
};

/// Degenerate frequency nu0 = omega_p / 4 pi (Hz).
inline double degenerate_frequency(Wavelength pump) { return 0.5 * pump.frequency(); }
}  // namespace biphoton
