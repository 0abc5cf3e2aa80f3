#include "biphoton/spectra.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "biphoton/kernels.hpp"

namespace biphoton
{
namespace
{
void check_uniform(const std::vector<double>& grid)
{
    if (grid.size() < 2)
        throw DomainError("spectrum needs at least two samples");
    const double h = grid[1] - grid[0];
    if (!(h > 0.0))
        throw DomainError("spectrum grid must be strictly increasing");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-6 * h)
            throw DomainError("spectrum grid must be uniform");
}

void fill_metadata(Spectrum& s)
{
    s.raw_peak = *std::max_element(s.rate.begin(), s.rate.end());
    const bool covers_zero = s.detuning.front() <= 0.0 && s.detuning.back() >= 0.0;
    s.central_value = covers_zero ? central_value(s.detuning, s.rate) : 0.0;
}

Spectrum sampled_spectrum(const AxisRange& grid, const kernels::AmplitudeSampler& sampler,
                          Execution exec, std::string label)
{
    grid.validate("spectrum detuning");
    Spectrum s;
    s.label = std::move(label);
    s.detuning = grid.samples();
    s.amplitude.resize(s.detuning.size());
    std::vector<unsigned char> valid(s.detuning.size(), 0);
    if (exec == Execution::serial)
        kernels::sample_amplitudes_serial(s.detuning, sampler, s.amplitude, valid);
    else
        kernels::sample_amplitudes_openmp(s.detuning, sampler, s.amplitude, valid);

    s.rate.resize(s.amplitude.size());
    std::transform(s.amplitude.begin(), s.amplitude.end(), s.rate.begin(),
                   [](std::complex<double> a) { return std::norm(a); });
    s.masked_points = static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 0));
    fill_metadata(s);
    return s;
}
}  // namespace

double central_value(const std::vector<double>& detuning, const std::vector<double>& rate)
{
    check_uniform(detuning);
    if (rate.size() != detuning.size())
        throw DomainError("spectrum grid and values differ in length");
    const double h = detuning[1] - detuning[0];
    const double x = -detuning.front() / h;  // fractional index of nu = 0
    if (x < 0.0 || x > static_cast<double>(detuning.size() - 1))
        throw DomainError("spectrum grid does not contain nu = 0");
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 1e-9)
        return rate[static_cast<std::size_t>(nearest)];

    // Cubic through the four samples around 0, shifted inward at the edges.
    const auto n = static_cast<std::ptrdiff_t>(detuning.size());
    std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(x)) - 1;
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, std::max<std::ptrdiff_t>(0, n - 4));
    const std::ptrdiff_t count = std::min<std::ptrdiff_t>(4, n);
    double value = 0.0;
    for (std::ptrdiff_t j = 0; j < count; ++j)
    {
        double basis = 1.0;
        for (std::ptrdiff_t m = 0; m < count; ++m)
            if (m != j)
                basis *= (x - static_cast<double>(i0 + m)) / static_cast<double>(j - m);
        value += basis * rate[static_cast<std::size_t>(i0 + j)];
    }
    return value;
}

Spectrum make_spectrum(std::vector<double> detuning, std::vector<double> rate, std::string label)
{
    check_uniform(detuning);
    if (rate.size() != detuning.size())
        throw DomainError("spectrum grid and values differ in length");
    for (double r : rate)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw DomainError("spectrum values must be finite and non-negative");
    Spectrum s;
    s.label = std::move(label);
    s.detuning = std::move(detuning);
    s.rate = std::move(rate);
    fill_metadata(s);
    return s;
}

Spectrum initial_spectrum(const SourceDesign& design, const AxisRange& grid, Execution exec)
{
    design.validate();
    const double nu0 = degenerate_frequency(design.pump.wavelength);
    const double scale = std::sqrt(design.detection_bandwidth);
    auto sampler = [&](double nu) -> std::optional<std::complex<double>> {
        if (!pair_in_window(design.crystal, design.pump, nu))
            return std::nullopt;
        const double ws = kTwoPi * (nu0 + nu);
        const CollectionModes modes = design.modes(ws, 0.0, 0.0);
        return scale * overlap_amplitude(ws, modes, design.crystal, design.pump, design.quadrature);
    };
    return sampled_spectrum(grid, sampler, exec, "initial");
}

Spectrum transformed_spectrum(const SourceDesign& design, const AxisRange& grid,
                              EfficiencyMode mode, Execution exec)
{
    design.validate();
    const double nu0 = degenerate_frequency(design.pump.wavelength);
    const double wp = design.pump.angular_frequency();
    const double scale = std::sqrt(design.detection_bandwidth);
    auto sampler = [&](double nu) -> std::optional<std::complex<double>> {
        if (!pair_in_window(design.crystal, design.pump, nu))
            return std::nullopt;
        const double ws = kTwoPi * (nu0 + nu);
        OverlapSetup setup;
        try
        {
            const double ts = angle_for_frequency(ws, design.grating);
            const double ti = angle_for_frequency(wp - ws, design.grating);
            setup = overlap_setup(ws, design.modes(ws, ts, ti), design.crystal, design.pump);
        }
        catch (const DomainError&)
        {
            return std::nullopt;  // evanescent order or total internal reflection
        }
        return scale * integrate_overlap(setup, design.quadrature);
    };
    Spectrum ideal = sampled_spectrum(grid, sampler, exec, "transformed_ideal");
    return mode == EfficiencyMode::ideal ? ideal : apply_efficiency(ideal, design, mode);
}

Spectrum apply_efficiency(const Spectrum& ideal, const SourceDesign& design, EfficiencyMode mode)
{
    Spectrum out = ideal;
    out.label = "transformed_" + std::string(to_string(mode));
    if (mode == EfficiencyMode::ideal)
        return out;
    GratingSpec grating = design.grating;
    grating.mode = mode;
    const double nu0 = degenerate_frequency(design.pump.wavelength);
    const double wp = design.pump.angular_frequency();
    for (std::size_t i = 0; i < out.detuning.size(); ++i)
    {
        const double ws = kTwoPi * (nu0 + out.detuning[i]);
        if (!(ws > 0.0 && ws < wp))
        {
            out.rate[i] = 0.0;
            if (!out.amplitude.empty())
                out.amplitude[i] = 0.0;
            continue;
        }
        const double eff = pair_efficiency(ws, wp, grating);
        out.rate[i] *= eff;
        if (!out.amplitude.empty())
            out.amplitude[i] *= std::sqrt(eff);
    }
    fill_metadata(out);
    return out;
}

double bandwidth(const Spectrum& spectrum)
{
    const double center = central_value(spectrum.detuning, spectrum.rate);
    if (!(center > 0.0))
        throw DomainError("bandwidth is undefined: R(0) is not positive");
    const double h = spectrum.step();
    double area = 0.0;
    for (std::size_t i = 1; i < spectrum.rate.size(); ++i)
        area += 0.5 * h * (spectrum.rate[i - 1] + spectrum.rate[i]);
    return area / center;
}

CorrelationFunction correlation_function(const Spectrum& spectrum, int padding)
{
    if (padding < 8)
        throw DomainError("zero-padding factor must be at least 8");
    check_uniform(spectrum.detuning);
    const std::size_t n = spectrum.detuning.size();
    const std::size_t m = n * static_cast<std::size_t>(padding);

    // fftw_malloc'd buffers, released on every path.
    struct Buffer
    {
        fftw_complex* data;
        explicit Buffer(std::size_t size)
            : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size)))
        {
        }
        ~Buffer() { fftw_free(data); }
        Buffer(const Buffer&) = delete;
        Buffer& operator=(const Buffer&) = delete;
    };
    Buffer in(m);
    Buffer out(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        std::complex<double> f{};
        if (i < n)
            f = spectrum.amplitude.empty() ? std::sqrt(spectrum.rate[i]) : spectrum.amplitude[i];
        in.data[i][0] = f.real();
        in.data[i][1] = f.imag();
    }

    static std::mutex planner;  // the FFTW planner is not thread-safe
    fftw_plan plan;
    {
        std::lock_guard lock(planner);
        plan = fftw_plan_dft_1d(static_cast<int>(m), in.data, out.data, FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }

    // Delays k / (M dnu) for |k| < M/2; the Nyquist bin is dropped so the grid
    // is symmetric.
    const auto half = static_cast<std::ptrdiff_t>((m - 1) / 2);
    const double dt = 1.0 / (static_cast<double>(m) * spectrum.step());
    CorrelationFunction g;
    g.padding = padding;
    g.delay.reserve(2 * half + 1);
    g.g2.reserve(2 * half + 1);
    for (std::ptrdiff_t k = -half; k <= half; ++k)
    {
        const std::size_t bin = static_cast<std::size_t>(k < 0 ? k + static_cast<std::ptrdiff_t>(m) : k);
        const double re = out.data[bin][0];
        const double im = out.data[bin][1];
        g.delay.push_back(static_cast<double>(k) * dt);
        g.g2.push_back(re * re + im * im);
    }
    g.raw_peak = g.g2[g.center()];
    if (!(g.raw_peak > 0.0))
        throw DomainError("correlation function is undefined for an all-zero spectrum");
    for (double& v : g.g2)
        v /= g.raw_peak;
    g.g2[g.center()] = 1.0;
    return g;
}

double correlation_time(const CorrelationFunction& g)
{
    if (g.delay.size() < 2)
        throw DomainError("correlation function needs at least two samples");
    double area = 0.0;
    for (std::size_t i = 1; i < g.g2.size(); ++i)
        area += 0.5 * (g.delay[i] - g.delay[i - 1]) * (g.g2[i - 1] + g.g2[i]);
    return area / g.g2[g.center()];
}
}  // namespace biphoton
