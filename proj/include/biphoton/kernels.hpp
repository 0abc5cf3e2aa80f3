#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>

#include "biphoton/optics.hpp"
#include "biphoton/phasematching.hpp"

// Data-parallel inner loops. Every kernel has a serial reference version
// and an OpenMP version; tests hold them bit-identical.
namespace biphoton::kernels
{
struct GridProblem
{
    const CrystalSpec& crystal;
    const PumpSpec& pump;
    std::span<const double> detuning;
    std::span<const double> angle;
};

/// Raw sinc^2 over the (angle, detuning) grid, row-major by angle.
/// `valid` is 0 where the point has no conjugate idler or leaves the window.
void intensity_grid_serial(const GridProblem& problem, std::span<double> out,
                           std::span<unsigned char> valid);
void intensity_grid_openmp(const GridProblem& problem, std::span<double> out,
                           std::span<unsigned char> valid);

/// Amplitude at one detuning, or nullopt for a masked sample.
using AmplitudeSampler = std::function<std::optional<std::complex<double>>(double)>;

/// Evaluate `sampler` at every detuning. Exceptions thrown by the sampler
/// propagate (the first one, from the lowest index, in the OpenMP version).
void sample_amplitudes_serial(std::span<const double> detuning, const AmplitudeSampler& sampler,
                              std::span<std::complex<double>> out,
                              std::span<unsigned char> valid);
void sample_amplitudes_openmp(std::span<const double> detuning, const AmplitudeSampler& sampler,
                              std::span<std::complex<double>> out,
                              std::span<unsigned char> valid);
}  // namespace biphoton::kernels
