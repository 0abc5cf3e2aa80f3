#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biphoton/design.hpp"
#include "biphoton/execution.hpp"
#include "biphoton/spectra.hpp"

namespace biphoton
{
/// One-parameter sweep: a strictly increasing axis and one value per sample
/// for each named objective.
struct SweepResult
{
    std::string parameter;
    std::string unit;
    std::vector<double> values;
    std::vector<std::pair<std::string, std::vector<double>>> objectives;
    std::string mode;  // "ideal", "anchored", or "ideal+anchored"
    std::vector<std::string> warnings;

    const std::vector<double>& objective(const std::string& name) const;
};

/// `count` logarithmically spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Transformed bandwidth versus matched collection waist: at each W the
/// collection waists are W at the reference wavelength, W_p = W / sqrt(2),
/// and Gamma is re-selected. Objectives "bandwidth_<mode>" in Hz.
SweepResult waist_sweep(const SourceDesign& design, std::span<const double> waists,
                        const AxisRange& grid, std::span<const EfficiencyMode> modes,
                        Execution exec = Execution::parallel);

struct GammaOptimum
{
    double gamma = 0.0;
    double bandwidth = 0.0;  // Hz, ideal transformed
    bool at_boundary = false;
    std::vector<std::pair<double, double>> trace;  // (gamma, bandwidth) per evaluation
};

/// Ideal transformed bandwidth at relay magnification `gamma`.
double bandwidth_at_gamma(const SourceDesign& design, double gamma, const AxisRange& grid,
                          Execution exec = Execution::parallel);

/// Golden-section maximization of the ideal transformed bandwidth over
/// gamma in [lo, hi], stopping when the bracket is narrower than `tolerance`.
GammaOptimum optimize_gamma(const SourceDesign& design, double lo, double hi,
                            const AxisRange& grid, double tolerance = 1e-3,
                            Execution exec = Execution::parallel);

struct RateScaling
{
    SweepResult samples;  // objective "peak_rate"
    double slope = 0.0;   // d log R / d log W
};

/// Central (nu = 0) coincidence rate in the collinear matched geometry per
/// waist, with the log-log slope over all samples.
RateScaling rate_vs_waist(const SourceDesign& design, std::span<const double> waists,
                          Execution exec = Execution::parallel);

/// Rate at nu = 0 for matched waist W, collinear modes.
double peak_rate(const SourceDesign& design, double waist);
}  // namespace biphoton
