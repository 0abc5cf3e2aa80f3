#include "biphoton/optics.hpp"

#include <cmath>
#include <sstream>

namespace biphoton
{
namespace
{
void require_window(const CrystalSpec& crystal, Wavelength lambda)
{
    if (!crystal.in_window(lambda))
    {
        std::ostringstream msg;
        msg << "wavelength " << lambda.micrometers() << " um is outside the Sellmeier window ["
            << crystal.window_min / kMicron << ", " << crystal.window_max / kMicron << "] um of "
            << crystal.name;
        throw DomainError(msg.str());
    }
}
}  // namespace

double SellmeierCoefficients::index(double lambda_um) const
{
    const double l2 = lambda_um * lambda_um;
    const double n2 = a + b / (l2 - c) - d * l2;
    if (!(n2 > 0.0))
        throw DomainError("Sellmeier formula gives a non-positive n^2");
    return std::sqrt(n2);
}

void CrystalSpec::validate() const
{
    if (!(length > 0.0))
        throw DomainError("crystal length must be positive");
    if (!(cut_angle >= 0.0 && cut_angle <= kPi / 2))
        throw DomainError("cut angle must lie in [0, pi/2]");
    if (!(window_min > 0.0 && window_max > window_min))
        throw DomainError("Sellmeier window must be a positive, non-empty interval");
    // Negative uniaxial: sample the window.
    constexpr int kSamples = 32;
    for (int i = 0; i <= kSamples; ++i)
    {
        const Wavelength lambda(window_min + (window_max - window_min) * i / kSamples);
        if (!(ordinary.index(lambda.micrometers()) > extraordinary.index(lambda.micrometers())))
            throw DomainError("crystal must be negative uniaxial (n_o > n_e) across its window");
    }
}

CrystalSpec bbo_crystal()
{
    CrystalSpec crystal;
    crystal.name = "BBO";
    crystal.length = 2e-3;
    crystal.ordinary = {2.7405, 0.0184, 0.0179, 0.0155};
    crystal.extraordinary = {2.3730, 0.0128, 0.0156, 0.0044};
    crystal.walkoff_displacement = 50e-6;
    return crystal;
}

double refractive_index_ordinary(const CrystalSpec& crystal, Wavelength lambda)
{
    require_window(crystal, lambda);
    return crystal.ordinary.index(lambda.micrometers());
}

double refractive_index_extraordinary_principal(const CrystalSpec& crystal, Wavelength lambda)
{
    require_window(crystal, lambda);
    return crystal.extraordinary.index(lambda.micrometers());
}

double refractive_index_extraordinary(const CrystalSpec& crystal, Wavelength lambda, double theta)
{
    if (!(theta >= 0.0 && theta <= kPi / 2))
        throw DomainError("extraordinary angle must lie in [0, pi/2]");
    const double no = refractive_index_ordinary(crystal, lambda);
    const double ne = refractive_index_extraordinary_principal(crystal, lambda);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double solve_cut_angle(const CrystalSpec& crystal, Wavelength pump, double index_tolerance)
{
    const double target = refractive_index_ordinary(crystal, Wavelength(2.0 * pump.meters()));
    auto mismatch = [&](double theta) {
        return refractive_index_extraordinary(crystal, pump, theta) - target;
    };

    // n_e(theta) decreases monotonically from n_o (theta = 0) to n_e (pi/2).
    double lo = 0.0;
    double hi = kPi / 2;
    const double f_lo = mismatch(lo);
    const double f_hi = mismatch(hi);
    if (std::abs(f_hi) <= index_tolerance)
        return hi;
    if (std::abs(f_lo) <= index_tolerance)
        return lo;
    if (f_lo < 0.0 || f_hi > 0.0)
    {
        std::ostringstream msg;
        msg << "collinear degenerate type-I phase matching is infeasible for " << crystal.name
            << " at pump " << pump.micrometers() << " um";
        throw PhaseMatchingError(msg.str());
    }

    for (int iter = 0; iter < 200; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = mismatch(mid);
        if (std::abs(f_mid) < index_tolerance)
            return mid;
        (f_mid > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-16)
            return mid;
    }
    throw NumericalError("cut-angle bisection did not converge");
}

double external_angle(const CrystalSpec& crystal, Wavelength lambda, double internal)
{
    const double s = refractive_index_ordinary(crystal, lambda) * std::sin(internal);
    if (!(std::abs(internal) < kPi / 2) || std::abs(s) >= 1.0)
        throw DomainError("total internal reflection at the exit face");
    return std::asin(s);
}

double internal_angle(const CrystalSpec& crystal, Wavelength lambda, double external)
{
    if (!(std::abs(external) < kPi / 2))
        throw DomainError("external angle must lie in (-pi/2, pi/2)");
    return std::asin(std::sin(external) / refractive_index_ordinary(crystal, lambda));
}
}  // namespace biphoton
