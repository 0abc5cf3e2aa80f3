// Serial reference vs OpenMP for the two hot kernels: the sinc^2 grid and
// the per-detuning overlap sampler behind every spectrum.
#include <benchmark/benchmark.h>

#include <vector>

#include "biphoton/design.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/spectra.hpp"

using namespace biphoton;

namespace
{
const SourceDesign& design()
{
    static const SourceDesign d = default_design();
    return d;
}

template <bool Parallel>
void BM_IntensityGrid(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto nu = AxisRange{-200e12, 500e12, n}.samples();
    const auto th = AxisRange{radians(-10.0), radians(10.0), n / 2}.samples();
    const kernels::GridProblem p{design().crystal, design().pump, nu, th};
    std::vector<double> out(nu.size() * th.size());
    std::vector<unsigned char> valid(out.size());
    for (auto _ : state)
    {
        if constexpr (Parallel)
            kernels::intensity_grid_openmp(p, out, valid);
        else
            kernels::intensity_grid_serial(p, out, valid);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Parallel>
void BM_TransformedSpectrum(benchmark::State& state)
{
    const AxisRange g{-200e12, 200e12, static_cast<std::size_t>(state.range(0))};
    const Execution exec = Parallel ? Execution::parallel : Execution::serial;
    for (auto _ : state)
    {
        Spectrum s = transformed_spectrum(design(), g, EfficiencyMode::ideal, exec);
        benchmark::DoNotOptimize(s.rate.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
}  // namespace

BENCHMARK(BM_IntensityGrid<false>)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntensityGrid<true>)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TransformedSpectrum<false>)->Arg(401)->Arg(1601)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformedSpectrum<true>)->Arg(401)->Arg(1601)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
