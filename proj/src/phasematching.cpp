#include "biphoton/phasematching.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/kernels.hpp"

namespace biphoton
{
void PumpSpec::validate() const
{
    if (!(waist > 0.0))
        throw DomainError("pump waist must be positive");
}

void AxisRange::validate(const char* what) const
{
    if (points < 2 || !(max > min) || !std::isfinite(min) || !std::isfinite(max))
        throw DomainError(std::string(what) + " range must be increasing with at least 2 points");
}

std::vector<double> AxisRange::samples() const
{
    std::vector<double> out(points);
    const double h = step();
    for (std::size_t i = 0; i < points; ++i)
        out[i] = min + h * static_cast<double>(i);
    out.back() = max;
    return out;
}

double pump_wavenumber(const CrystalSpec& crystal, const PumpSpec& pump)
{
    return refractive_index_extraordinary(crystal, pump.wavelength, crystal.cut_angle) *
           pump.angular_frequency() / kSpeedOfLight;
}

double ordinary_wavenumber(const CrystalSpec& crystal, double omega)
{
    return refractive_index_ordinary(crystal, Wavelength::from_angular_frequency(omega)) * omega /
           kSpeedOfLight;
}

double conjugate_angle(double signal_omega, double signal_internal, const CrystalSpec& crystal,
                       const PumpSpec& pump)
{
    const double pump_omega = pump.angular_frequency();
    if (!(signal_omega > 0.0 && signal_omega < pump_omega))
        throw DomainError("signal frequency must lie in (0, omega_p)");
    const double ks = ordinary_wavenumber(crystal, signal_omega);
    const double ki = ordinary_wavenumber(crystal, pump_omega - signal_omega);
    const double s = ks * std::abs(std::sin(signal_internal)) / ki;
    if (s > 1.0)
        throw PhaseMatchingError("idler cannot carry the required transverse momentum");
    return std::asin(s);
}

double longitudinal_mismatch(double signal_omega, double signal_internal,
                             const CrystalSpec& crystal, const PumpSpec& pump)
{
    const double idler_internal = conjugate_angle(signal_omega, signal_internal, crystal, pump);
    const double ks = ordinary_wavenumber(crystal, signal_omega);
    const double ki = ordinary_wavenumber(crystal, pump.angular_frequency() - signal_omega);
    return pump_wavenumber(crystal, pump) - ks * std::cos(signal_internal) -
           ki * std::cos(idler_internal);
}

double phase_matching_intensity(double mismatch, double length)
{
    const double x = 0.5 * mismatch * length;
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 3.0;
    const double s = std::sin(x) / x;
    return s * s;
}

bool pair_in_window(const CrystalSpec& crystal, const PumpSpec& pump, double nu)
{
    const double nu0 = degenerate_frequency(pump.wavelength);
    if (!(std::abs(nu) < nu0))
        return false;
    return crystal.in_window(Wavelength::from_frequency(nu0 + nu)) &&
           crystal.in_window(Wavelength::from_frequency(nu0 - nu));
}

std::optional<double> pair_intensity(const CrystalSpec& crystal, const PumpSpec& pump, double nu,
                                     double signal_external)
{
    if (!pair_in_window(crystal, pump, nu))
        return std::nullopt;
    const Wavelength signal = Wavelength::at_detuning(pump.wavelength, nu);
    const double internal = internal_angle(crystal, signal, signal_external);
    try
    {
        const double mismatch =
            longitudinal_mismatch(signal.angular_frequency(), internal, crystal, pump);
        return phase_matching_intensity(mismatch, crystal.length);
    }
    catch (const PhaseMatchingError&)
    {
        return std::nullopt;
    }
}

SpectralAngularGrid intensity_grid(const CrystalSpec& crystal, const PumpSpec& pump,
                                   const AxisRange& detuning, const AxisRange& angle,
                                   Execution exec)
{
    detuning.validate("detuning");
    angle.validate("angle");
    if (std::abs(angle.min) >= kPi / 2 || std::abs(angle.max) >= kPi / 2)
        throw DomainError("angle range must lie inside (-pi/2, pi/2)");

    SpectralAngularGrid grid;
    grid.detuning = detuning.samples();
    grid.angle = angle.samples();
    grid.intensity.assign(grid.detuning.size() * grid.angle.size(), 0.0);
    std::vector<unsigned char> valid(grid.intensity.size(), 0);

    const kernels::GridProblem problem{crystal, pump, grid.detuning, grid.angle};
    if (exec == Execution::serial)
        kernels::intensity_grid_serial(problem, grid.intensity, valid);
    else
        kernels::intensity_grid_openmp(problem, grid.intensity, valid);

    grid.masked_points = static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 0));
    grid.raw_maximum = *std::max_element(grid.intensity.begin(), grid.intensity.end());
    if (grid.raw_maximum > 0.0)
        for (double& v : grid.intensity)
            v /= grid.raw_maximum;
    return grid;
}

std::optional<double> branch_angle(const CrystalSpec& crystal, const PumpSpec& pump, double nu)
{
    if (!pair_in_window(crystal, pump, nu))
        return std::nullopt;
    const double ws = Wavelength::at_detuning(pump.wavelength, nu).angular_frequency();
    const double ks = ordinary_wavenumber(crystal, ws);
    const double ki = ordinary_wavenumber(crystal, pump.angular_frequency() - ws);

    // Mismatch rises monotonically with the signal angle until the idler's
    // transverse momentum saturates.
    const double limit = ki < ks ? std::asin(ki / ks) * (1.0 - 1e-12) : kPi / 2 * (1.0 - 1e-12);
    auto f = [&](double theta) { return longitudinal_mismatch(ws, theta, crystal, pump); };
    double lo = 0.0;
    double hi = limit;
    double f_lo = f(lo);
    if (f_lo >= 0.0)
        return f_lo == 0.0 ? std::optional<double>(0.0) : std::nullopt;
    if (f(hi) < 0.0)
        return std::nullopt;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double internal = 0.5 * (lo + hi);
    try
    {
        return external_angle(crystal, Wavelength::from_angular_frequency(ws), internal);
    }
    catch (const DomainError&)
    {
        return std::nullopt;
    }
}

namespace
{
DetuningEdge scan_edge(const CrystalSpec& crystal, const PumpSpec& pump, double max_angle,
                       double step, double direction, double& peak)
{
    const double nu0 = degenerate_frequency(pump.wavelength);
    auto outside = [&](double nu) {
        const auto theta = branch_angle(crystal, pump, nu);
        if (theta)
            peak = std::max(peak, *theta);
        return !theta || *theta > max_angle;
    };

    double inside = 0.0;
    for (double nu = direction * step; std::abs(nu) < nu0; nu += direction * step)
    {
        if (!pair_in_window(crystal, pump, nu))
            break;
        if (outside(nu))
        {
            double a = inside;
            double b = nu;
            while (std::abs(b - a) > 1e-6 * kTHz)
            {
                const double mid = 0.5 * (a + b);
                (outside(mid) ? b : a) = mid;
            }
            return {0.5 * (a + b), EdgeKind::crossing};
        }
        inside = nu;
    }
    return {direction * nu0, EdgeKind::kinematic};
}
}  // namespace

AccessibleRange accessible_detuning_range(const CrystalSpec& crystal, const PumpSpec& pump,
                                          double max_external_angle, double scan_step)
{
    if (!(max_external_angle > 0.0 && max_external_angle < kPi / 2))
        throw DomainError("aperture half-angle must lie in (0, pi/2)");
    if (!(scan_step > 0.0))
        throw DomainError("scan step must be positive");
    AccessibleRange range;
    range.lower = scan_edge(crystal, pump, max_external_angle, scan_step, -1.0,
                            range.peak_branch_angle);
    range.upper = scan_edge(crystal, pump, max_external_angle, scan_step, +1.0,
                            range.peak_branch_angle);
    return range;
}
}  // namespace biphoton
