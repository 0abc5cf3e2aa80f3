#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "biphoton/collection.hpp"
#include "biphoton/design.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/phasematching.hpp"

namespace oracles
{
using namespace biphoton;

// Straight 3-D tensor-product quadrature of the three-mode overlap written
// from the field definitions: a pump whose axis drifts as x = (d / L) z, and
// signal / idler Gaussians tilted by their internal angles. Trapezoid in x and
// y (Gaussian tails), composite Simpson in z.
inline std::complex<double> brute_force_overlap(double ws, const CollectionModes& m,
                                                const CrystalSpec& crystal, const PumpSpec& pump)
{
    const double wi = pump.angular_frequency() - ws;
    const Wavelength ls = Wavelength::from_angular_frequency(ws);
    const Wavelength li = Wavelength::from_angular_frequency(wi);
    const double ts = internal_angle(crystal, ls, m.signal_angle);
    const double ti = internal_angle(crystal, li, m.idler_angle);
    const double ks = ordinary_wavenumber(crystal, ws);
    const double ki = ordinary_wavenumber(crystal, wi);
    const double kp = pump_wavenumber(crystal, pump);
    const double L = crystal.length;
    const double d = crystal.walkoff_displacement;

    const int nx = 601, ny = 301, nz = 2001;
    const double X = 400e-6, Y = 300e-6;
    const double hx = 2 * X / (nx - 1), hy = 2 * Y / (ny - 1), hz = L / (nz - 1);

    double ysum = 0.0;
    for (int j = 0; j < ny; ++j)
    {
        const double y = -Y + j * hy;
        const double w = (j == 0 || j == ny - 1) ? 0.5 : 1.0;
        ysum += w * hy *
                std::exp(-y * y * (1 / (m.pump_waist * m.pump_waist) + 1 / (m.signal_waist * m.signal_waist) +
                                   1 / (m.idler_waist * m.idler_waist)));
    }

    std::complex<double> total = 0.0;
    for (int k = 0; k < nz; ++k)
    {
        const double z = -L / 2 + k * hz;
        const double wz = (k == 0 || k == nz - 1) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        std::complex<double> row = 0.0;
        for (int i = 0; i < nx; ++i)
        {
            const double x = -X + i * hx;
            const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
            const double xp = x - d * z / L;
            const double xs = x * std::cos(ts) - z * std::sin(ts);
            const double zs = x * std::sin(ts) + z * std::cos(ts);
            const double xi = x * std::cos(ti) - z * std::sin(ti);
            const double zi = x * std::sin(ti) + z * std::cos(ti);
            const double env = -xp * xp / (m.pump_waist * m.pump_waist) -
                               xs * xs / (m.signal_waist * m.signal_waist) -
                               xi * xi / (m.idler_waist * m.idler_waist);
            const double phase = kp * z - ks * zs - ki * zi;
            row += wx * hx * std::exp(std::complex<double>(env, phase));
        }
        total += wz * hz / 3.0 * row;
    }
    const double norm = std::pow(2 / kPi, 1.5) / (m.pump_waist * m.signal_waist * m.idler_waist);
    return norm * ysum * total;
}

struct OverlapDraw
{
    double signal_omega;
    CollectionModes modes;
    CrystalSpec crystal;
};

// Seeded random geometries around the default design: detuning, tilt, waists,
// walk-off. The idler sits within 0.1 deg of its transverse-matched partner.
inline std::vector<OverlapDraw> overlap_draws(const SourceDesign& d, int count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> nu_dist(-60e12, 60e12);
    std::uniform_real_distribution<double> angle_dist(radians(-3.0), radians(3.0));
    std::uniform_real_distribution<double> detune_dist(radians(-0.1), radians(0.1));
    std::uniform_real_distribution<double> waist_dist(30e-6, 80e-6);
    std::uniform_real_distribution<double> walk_dist(0.0, 100e-6);

    const double nu0 = degenerate_frequency(d.pump.wavelength);
    std::vector<OverlapDraw> out;
    for (int i = 0; i < count; ++i)
    {
        OverlapDraw draw{0.0, {}, d.crystal};
        draw.crystal.walkoff_displacement = walk_dist(rng);
        const double ws = kTwoPi * (nu0 + nu_dist(rng));
        const double wi = d.pump.angular_frequency() - ws;
        draw.signal_omega = ws;
        CollectionModes& m = draw.modes;
        m.signal_angle = angle_dist(rng);
        const double ts = internal_angle(draw.crystal, Wavelength::from_angular_frequency(ws), m.signal_angle);
        const double ti = -std::copysign(conjugate_angle(ws, std::abs(ts), draw.crystal, d.pump), ts);
        m.idler_angle = external_angle(draw.crystal, Wavelength::from_angular_frequency(wi), ti) + detune_dist(rng);
        m.signal_waist = waist_dist(rng);
        m.idler_waist = waist_dist(rng);
        m.pump_waist = waist_dist(rng);
        out.push_back(draw);
    }
    return out;
}
}  // namespace oracles
