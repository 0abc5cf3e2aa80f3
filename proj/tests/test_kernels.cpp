#include <doctest.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "biphoton/design.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/spectra.hpp"

using namespace biphoton;

TEST_CASE("OpenMP grid kernel matches the serial reference bit for bit")
{
    const SourceDesign d = default_design();
    const auto nu = AxisRange{-200e12, 500e12, 211}.samples();
    const auto th = AxisRange{radians(-10.0), radians(10.0), 97}.samples();
    const kernels::GridProblem p{d.crystal, d.pump, nu, th};
    std::vector<double> a(nu.size() * th.size()), b(a.size());
    std::vector<unsigned char> va(a.size()), vb(a.size());
    kernels::intensity_grid_serial(p, a, va);
    kernels::intensity_grid_openmp(p, b, vb);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    CHECK(va == vb);
}

TEST_CASE("OpenMP spectra match the serial reference bit for bit")
{
    const SourceDesign d = default_design();
    const AxisRange g{-200e12, 200e12, 161};
    const Spectrum s = transformed_spectrum(d, g, EfficiencyMode::anchored, Execution::serial);
    const Spectrum p = transformed_spectrum(d, g, EfficiencyMode::anchored, Execution::parallel);
    CHECK(s.rate == p.rate);
    CHECK(s.amplitude == p.amplitude);
    CHECK(initial_spectrum(d, g, Execution::serial).rate == initial_spectrum(d, g, Execution::parallel).rate);
}

TEST_CASE("sampler exceptions surface from the lowest failing index")
{
    const std::vector<double> nu{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::complex<double>> out(nu.size());
    std::vector<unsigned char> valid(nu.size());
    kernels::AmplitudeSampler bad = [](double x) -> std::optional<std::complex<double>> {
        if (x >= 3)
            throw std::runtime_error("failed at " + std::to_string(static_cast<int>(x)));
        return std::complex<double>(x);
    };
    for (auto run : {&kernels::sample_amplitudes_serial, &kernels::sample_amplitudes_openmp})
    {
        try
        {
            run(nu, bad, out, valid);
            FAIL("expected an exception");
        }
        catch (const std::runtime_error& e)
        {
            CHECK(std::string(e.what()) == "failed at 3");
        }
    }
}
