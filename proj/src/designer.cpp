#include "biphoton/designer.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "biphoton/collection.hpp"

namespace biphoton
{
namespace
{
constexpr double kSmallWaist = 100e-6;  // below this the turnover regime starts

void check_axis(std::span<const double> values, const char* what)
{
    if (values.empty())
        throw DomainError(std::string(what) + " sweep needs at least one sample");
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (!(values[i] > 0.0))
            throw DomainError(std::string(what) + " values must be positive");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw DomainError(std::string(what) + " values must be strictly increasing");
    }
}

std::vector<std::string> waist_warnings(const SourceDesign& d, double waist)
{
    std::vector<std::string> out;
    if (waist < kSmallWaist)
    {
        std::ostringstream msg;
        msg << "waist " << waist / kMicron
            << " um is below 100 um: bandwidth turnover regime, noncollinear volume shrinkage "
               "dominates";
        out.push_back(msg.str());
    }
    const double wp = d.pump.angular_frequency();
    const CollectionModes modes = d.modes(0.5 * wp, 0.0, 0.0);
    const Wavelength center = d.central();
    for (auto& w : paraxial_warnings(modes, center, center, d.crystal, d.pump))
        out.push_back(std::move(w));
    return out;
}

// Runs body(i) for every sample, in parallel when asked; rethrows the error
// of the lowest failing index.
template <class Body>
void for_each_sample(std::size_t n, Execution exec, Body&& body)
{
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i)
    {
        try
        {
            body(static_cast<std::size_t>(i));
        }
        catch (...)
        {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}
}  // namespace

const std::vector<double>& SweepResult::objective(const std::string& name) const
{
    for (const auto& [key, values] : objectives)
        if (key == name)
            return values;
    throw DomainError("sweep has no objective '" + name + "'");
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count)
{
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw DomainError("log spacing needs 0 < lo < hi and at least two samples");
    std::vector<double> out(count);
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo * std::exp(step * static_cast<double>(i));
    out.front() = lo;
    out.back() = hi;
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("slope fit needs at least two paired samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0.0 && y[i] > 0.0))
            throw DomainError("log-log fit needs positive samples");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult waist_sweep(const SourceDesign& design, std::span<const double> waists,
                        const AxisRange& grid, std::span<const EfficiencyMode> modes,
                        Execution exec)
{
    check_axis(waists, "waist");
    if (modes.empty())
        throw DomainError("waist sweep needs at least one efficiency mode");

    SweepResult result;
    result.parameter = "waist";
    result.unit = "m";
    result.values.assign(waists.begin(), waists.end());
    for (std::size_t m = 0; m < modes.size(); ++m)
    {
        result.objectives.emplace_back("bandwidth_" + std::string(to_string(modes[m])),
                                       std::vector<double>(waists.size()));
        result.mode += (m ? "+" : "") + std::string(to_string(modes[m]));
    }

    std::vector<std::vector<std::string>> notes(waists.size());
    for_each_sample(waists.size(), exec, [&](std::size_t i) {
        const SourceDesign d = design.with_matched_waist(waists[i]);
        notes[i] = waist_warnings(d, waists[i]);
        const Spectrum ideal =
            transformed_spectrum(d, grid, EfficiencyMode::ideal, Execution::serial);
        for (std::size_t m = 0; m < modes.size(); ++m)
            result.objectives[m].second[i] = bandwidth(apply_efficiency(ideal, d, modes[m]));
    });
    for (auto& n : notes)
        for (auto& w : n)
            result.warnings.push_back(std::move(w));
    return result;
}

double bandwidth_at_gamma(const SourceDesign& design, double gamma, const AxisRange& grid,
                          Execution exec)
{
    SourceDesign d = design;
    d.grating.magnification = gamma;
    return bandwidth(transformed_spectrum(d, grid, EfficiencyMode::ideal, exec));
}

GammaOptimum optimize_gamma(const SourceDesign& design, double lo, double hi,
                            const AxisRange& grid, double tolerance, Execution exec)
{
    if (!(lo > 0.0 && hi > lo))
        throw DomainError("gamma bracket must satisfy 0 < lo < hi");
    if (!(tolerance > 0.0))
        throw DomainError("gamma tolerance must be positive");

    GammaOptimum opt;
    auto objective = [&](double gamma) {
        const double value = bandwidth_at_gamma(design, gamma, grid, exec);
        opt.trace.emplace_back(gamma, value);
        return value;
    };

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > tolerance)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }
    opt.gamma = fc > fd ? c : d;
    opt.bandwidth = std::max(fc, fd);
    // A maximum pinned against either end of the original bracket is not interior.
    opt.at_boundary = opt.gamma - lo < 2.0 * tolerance || hi - opt.gamma < 2.0 * tolerance;
    return opt;
}

double peak_rate(const SourceDesign& design, double waist)
{
    const SourceDesign d = design.with_matched_waist(waist);
    const double ws = 0.5 * d.pump.angular_frequency();
    return coincidence_rate(ws, d.modes(ws, 0.0, 0.0), d.crystal, d.pump, d.quadrature);
}

RateScaling rate_vs_waist(const SourceDesign& design, std::span<const double> waists,
                          Execution exec)
{
    check_axis(waists, "waist");
    RateScaling out;
    out.samples.parameter = "waist";
    out.samples.unit = "m";
    out.samples.mode = "ideal";
    out.samples.values.assign(waists.begin(), waists.end());
    std::vector<double> rates(waists.size());
    std::vector<std::vector<std::string>> notes(waists.size());
    for_each_sample(waists.size(), exec, [&](std::size_t i) {
        notes[i] = waist_warnings(design.with_matched_waist(waists[i]), waists[i]);
        rates[i] = peak_rate(design, waists[i]);
    });
    for (auto& n : notes)
        for (auto& w : n)
            out.samples.warnings.push_back(std::move(w));
    out.slope = waists.size() >= 2 ? loglog_slope(waists, rates) : 0.0;
    out.samples.objectives.emplace_back("peak_rate", std::move(rates));
    return out;
}
}  // namespace biphoton
