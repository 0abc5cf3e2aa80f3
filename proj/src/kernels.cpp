#include "biphoton/kernels.hpp"

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace biphoton::kernels
{
namespace
{
// Keeps the exception from the lowest failing index so the OpenMP loop
// reports the same error as the serial one.
class FirstError
{
  public:
    void capture(std::ptrdiff_t index)
    {
        std::lock_guard lock(mutex_);
        if (index < index_)
        {
            index_ = index;
            error_ = std::current_exception();
        }
    }

    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

  private:
    std::mutex mutex_;
    std::ptrdiff_t index_ = std::numeric_limits<std::ptrdiff_t>::max();
    std::exception_ptr error_;
};

void grid_point(const GridProblem& p, std::size_t flat, std::span<double> out,
                std::span<unsigned char> valid)
{
    const std::size_t nd = p.detuning.size();
    const auto value = pair_intensity(p.crystal, p.pump, p.detuning[flat % nd], p.angle[flat / nd]);
    out[flat] = value.value_or(0.0);
    valid[flat] = value ? 1 : 0;
}

void amplitude_point(std::span<const double> detuning, const AmplitudeSampler& sampler,
                     std::size_t i, std::span<std::complex<double>> out,
                     std::span<unsigned char> valid)
{
    const auto value = sampler(detuning[i]);
    out[i] = value.value_or(std::complex<double>{});
    valid[i] = value ? 1 : 0;
}
}  // namespace

void intensity_grid_serial(const GridProblem& problem, std::span<double> out,
                           std::span<unsigned char> valid)
{
    const std::size_t n = problem.detuning.size() * problem.angle.size();
    for (std::size_t i = 0; i < n; ++i)
        grid_point(problem, i, out, valid);
}

void intensity_grid_openmp(const GridProblem& problem, std::span<double> out,
                           std::span<unsigned char> valid)
{
    const auto n = static_cast<std::ptrdiff_t>(problem.detuning.size() * problem.angle.size());
    FirstError error;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        try
        {
            grid_point(problem, static_cast<std::size_t>(i), out, valid);
        }
        catch (...)
        {
            error.capture(i);
        }
    }
    error.rethrow();
}

void sample_amplitudes_serial(std::span<const double> detuning, const AmplitudeSampler& sampler,
                              std::span<std::complex<double>> out,
                              std::span<unsigned char> valid)
{
    for (std::size_t i = 0; i < detuning.size(); ++i)
        amplitude_point(detuning, sampler, i, out, valid);
}

void sample_amplitudes_openmp(std::span<const double> detuning, const AmplitudeSampler& sampler,
                              std::span<std::complex<double>> out,
                              std::span<unsigned char> valid)
{
    const auto n = static_cast<std::ptrdiff_t>(detuning.size());
    FirstError error;
    // Cost per sample varies with the quadrature depth.
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        try
        {
            amplitude_point(detuning, sampler, static_cast<std::size_t>(i), out, valid);
        }
        catch (...)
        {
            error.capture(i);
        }
    }
    error.rethrow();
}
}  // namespace biphoton::kernels
