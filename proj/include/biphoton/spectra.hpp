#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "biphoton/design.hpp"
#include "biphoton/execution.hpp"

namespace biphoton
{
/// Coincidence spectrum R(nu) on a uniform detuning grid.
///
/// `amplitude`, when present, holds the biphoton amplitude with
/// |amplitude|^2 == rate. Spectra built from sampled rates alone leave it
/// empty and the correlation function falls back to sqrt(R).
struct Spectrum
{
    std::string label;
    std::vector<double> detuning;  // Hz from nu0
    std::vector<double> rate;      // arbitrary units, >= 0
    std::vector<std::complex<double>> amplitude;
    double raw_peak = 0.0;
    double central_value = 0.0;     // R(0), interpolated if 0 is off-grid
    std::size_t masked_points = 0;  // samples forced to zero (evanescent, outside index window)

    double step() const { return detuning[1] - detuning[0]; }
};

/// Build a spectrum from samples; validates the grid and fills metadata.
Spectrum make_spectrum(std::vector<double> detuning, std::vector<double> rate,
                       std::string label = {});

/// R(0): exact sample when 0 lies on the grid, otherwise 4-point cubic
/// (Lagrange) interpolation.
double central_value(const std::vector<double>& detuning, const std::vector<double>& rate);

/// Collinear collection through a mirror: both modes on axis at every
/// frequency, unit reflectance.
Spectrum initial_spectrum(const SourceDesign& design, const AxisRange& grid,
                          Execution exec = Execution::parallel);

/// Grating-mapped collection: each photon is collected at the angle the
/// grating sends to the fiber axis; the pair efficiency weights the rate in
/// anchored mode. Evanescent orders contribute zero.
Spectrum transformed_spectrum(const SourceDesign& design, const AxisRange& grid,
                              EfficiencyMode mode, Execution exec = Execution::parallel);

/// Re-weight an ideal transformed spectrum by the pair efficiency of `mode`.
Spectrum apply_efficiency(const Spectrum& ideal, const SourceDesign& design, EfficiencyMode mode);

/// Equivalent width: trapezoid integral of R over the grid divided by R(0).
/// Throws DomainError when R(0) is not positive.
double bandwidth(const Spectrum& spectrum);

/// Normalized G2(tau), G2(0) = 1, on a delay grid symmetric about zero.
struct CorrelationFunction
{
    std::vector<double> delay;  // s
    std::vector<double> g2;
    double raw_peak = 0.0;
    int padding = 0;

    std::size_t center() const { return delay.size() / 2; }
};

/// G2(tau) = |sum F(nu) exp(-2 pi i nu tau) dnu|^2 with flat spectral phase,
/// by FFT of the zero-padded amplitude (padding >= 8).
CorrelationFunction correlation_function(const Spectrum& spectrum, int padding = 8);

/// Equivalent width of G2: trapezoid integral divided by G2(0).
double correlation_time(const CorrelationFunction& g);
}  // namespace biphoton
