#include "biphoton/grating.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biphoton
{
std::string_view to_string(EfficiencyMode mode)
{
    return mode == EfficiencyMode::ideal ? "ideal" : "anchored";
}

EfficiencyMode efficiency_mode_from_string(std::string_view text)
{
    if (text == "ideal")
        return EfficiencyMode::ideal;
    if (text == "anchored")
        return EfficiencyMode::anchored;
    throw DomainError("efficiency mode must be 'ideal' or 'anchored', got '" + std::string(text) +
                      "'");
}

void GratingSpec::validate() const
{
    if (!(groove_density > 0.0))
        throw DomainError("groove density must be positive");
    if (!(magnification > 0.0))
        throw DomainError("grating relay magnification must be positive");
    if (incidence && !(std::abs(*incidence) < kPi / 2))
        throw DomainError("incidence angle must lie in (-pi/2, pi/2)");
    for (std::size_t i = 0; i < anchors.size(); ++i)
    {
        if (!(anchors[i].wavelength > 0.0))
            throw DomainError("efficiency anchor wavelengths must be positive");
        if (!(anchors[i].efficiency >= 0.0 && anchors[i].efficiency <= 1.0))
            throw DomainError("efficiency anchors must lie in [0, 1]");
        if (i > 0 && !(anchors[i].wavelength > anchors[i - 1].wavelength))
            throw DomainError("efficiency anchors must be sorted by increasing wavelength");
    }
    if (mode == EfficiencyMode::anchored && anchors.size() < 2)
        throw DomainError("anchored efficiency needs at least two anchors");
}

double solve_theta0(double groove_density, Wavelength central)
{
    const double s = central.meters() * groove_density;
    if (!(s <= 1.0))
        throw DomainError("first order is evanescent at the central wavelength (lambda D > 1)");
    return std::asin(s);
}

GratingSpec resolved(GratingSpec grating, Wavelength central)
{
    if (!grating.incidence)
        grating.incidence = solve_theta0(grating.groove_density, central);
    return grating;
}

namespace
{
double incidence_of(const GratingSpec& grating)
{
    if (!grating.incidence)
        throw DomainError("grating incidence angle is unresolved");
    return *grating.incidence;
}
}  // namespace

double angle_for_frequency(double omega, const GratingSpec& grating)
{
    if (!(omega > 0.0))
        throw DomainError("angular frequency must be positive");
    const double arg =
        std::sin(incidence_of(grating)) - kTwoPi * kSpeedOfLight * grating.groove_density / omega;
    if (std::abs(arg) > 1.0)
        throw DomainError("diffraction order is evanescent at this frequency");
    return std::asin(arg) / grating.magnification;
}

double frequency_for_angle(double theta, const GratingSpec& grating)
{
    const double denom = std::sin(incidence_of(grating)) - std::sin(grating.magnification * theta);
    if (!(denom > 0.0))
        throw DomainError("no positive frequency maps to this angle");
    return kTwoPi * kSpeedOfLight * grating.groove_density / denom;
}

double angular_dispersion(Wavelength lambda, const GratingSpec& grating)
{
    const double theta = angle_for_frequency(lambda.angular_frequency(), grating);
    return -grating.groove_density /
           (grating.magnification * std::cos(grating.magnification * theta));
}

double efficiency(Wavelength lambda, const GratingSpec& grating)
{
    if (grating.mode == EfficiencyMode::ideal)
        return 1.0;
    const auto& anchors = grating.anchors;
    const double x = lambda.meters();
    double value;
    if (x <= anchors.front().wavelength)
        value = anchors.front().efficiency;
    else if (x >= anchors.back().wavelength)
        value = anchors.back().efficiency;
    else
    {
        const auto hi = std::upper_bound(
            anchors.begin(), anchors.end(), x,
            [](double v, const EfficiencyAnchor& a) { return v < a.wavelength; });
        const auto lo = hi - 1;
        const double t = (x - lo->wavelength) / (hi->wavelength - lo->wavelength);
        value = lo->efficiency + t * (hi->efficiency - lo->efficiency);
    }
    return std::clamp(value, 0.0, 1.0);
}

double pair_efficiency(double signal_omega, double pump_omega, const GratingSpec& grating)
{
    if (!(signal_omega > 0.0 && signal_omega < pump_omega))
        throw DomainError("signal frequency must lie in (0, omega_p)");
    return efficiency(Wavelength::from_angular_frequency(signal_omega), grating) *
           efficiency(Wavelength::from_angular_frequency(pump_omega - signal_omega), grating);
}
}  // namespace biphoton
