#include "biphoton/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "biphoton/designer.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/spectra.hpp"

namespace biphoton
{
using nlohmann::json;

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

double rounded(double value)
{
    if (!std::isfinite(value))
        return value;
    return std::stod(format_number(value));
}

const OutputFile* PipelineResult::find(std::string_view name) const
{
    for (const auto& f : files)
        if (f.name == name)
            return &f;
    return nullptr;
}

const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names = {
        "xmap", "spectrum", "g2", "sweep-waist", "optimize-gamma", "rate-sweep", "report"};
    return names;
}

namespace
{
class Csv
{
public:
    explicit Csv(std::vector<std::string> header)
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            text_ += (i ? "," : "") + header[i];
        text_ += '\n';
    }

    void row(std::initializer_list<std::optional<double>> values)
    {
        bool first = true;
        for (const auto& v : values)
        {
            if (!first)
                text_ += ',';
            first = false;
            if (v)
                text_ += format_number(*v);
        }
        text_ += '\n';
    }

    void row(const std::vector<double>& values)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            text_ += (i ? "," : "") + format_number(values[i]);
        text_ += '\n';
    }

    std::string take() { return std::move(text_); }

private:
    std::string text_;
};

json axis_json(const AxisRange& r, double unit, const char* unit_name)
{
    return {{"min", rounded(r.min / unit)},
            {"max", rounded(r.max / unit)},
            {"points", r.points},
            {"unit", unit_name}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Initial plus the transformed spectra requested; the ideal transformed
// spectrum is computed once and reweighted for the anchored one.
std::vector<Spectrum> spectra_for(const SourceDesign& design, const RunConfig& config,
                                  std::span<const EfficiencyMode> modes, Execution exec)
{
    std::vector<Spectrum> out;
    out.push_back(initial_spectrum(design, config.grids.spectrum, exec));
    const Spectrum ideal =
        transformed_spectrum(design, config.grids.spectrum, EfficiencyMode::ideal, exec);
    for (EfficiencyMode m : modes)
        out.push_back(apply_efficiency(ideal, design, m));
    return out;
}

json spectrum_sidecar(const Spectrum& s)
{
    return {{"label", s.label},
            {"points", s.detuning.size()},
            {"detuning_min_THz", rounded(s.detuning.front() / kTHz)},
            {"detuning_max_THz", rounded(s.detuning.back() / kTHz)},
            {"raw_peak_au", rounded(s.raw_peak)},
            {"central_value_au", rounded(s.central_value)},
            {"masked_points", s.masked_points},
            {"bandwidth_THz", rounded(bandwidth(s) / kTHz)},
            {"amplitude", s.amplitude.empty() ? "sqrt(rate)" : "overlap"}};
}

void add_spectrum_files(PipelineResult& r, const Spectrum& s)
{
    Csv csv({"detuning_THz", "rate_au", "amplitude_re_au", "amplitude_im_au"});
    for (std::size_t i = 0; i < s.detuning.size(); ++i)
    {
        const std::complex<double> a =
            s.amplitude.empty() ? std::complex<double>(std::sqrt(s.rate[i])) : s.amplitude[i];
        csv.row({s.detuning[i] / kTHz, s.rate[i], a.real(), a.imag()});
    }
    r.files.push_back({"spectrum_" + s.label + ".csv", csv.take()});
    const json side = spectrum_sidecar(s);
    r.files.push_back({"spectrum_" + s.label + ".json", dump(side)});
    r.summary["spectra"].push_back(side);
}

void add_g2_files(PipelineResult& r, const Spectrum& s, int padding)
{
    const CorrelationFunction g = correlation_function(s, padding);
    Csv csv({"delay_fs", "g2"});
    for (std::size_t i = 0; i < g.delay.size(); ++i)
        csv.row({g.delay[i] / kFemtosecond, g.g2[i]});
    r.files.push_back({"g2_" + s.label + ".csv", csv.take()});
    const json side = {{"label", s.label},
                       {"points", g.delay.size()},
                       {"delay_step_fs", rounded((g.delay[1] - g.delay[0]) / kFemtosecond)},
                       {"padding", g.padding},
                       {"raw_peak_au", rounded(g.raw_peak)},
                       {"correlation_time_fs", rounded(correlation_time(g) / kFemtosecond)}};
    r.files.push_back({"g2_" + s.label + ".json", dump(side)});
    r.summary["correlations"].push_back(side);
}

void run_xmap(PipelineResult& r, const RunConfig& config, const SourceDesign& d, Execution exec)
{
    const SpectralAngularGrid grid = intensity_grid(d.crystal, d.pump, config.grids.xmap_detuning,
                                                    config.grids.xmap_angle, exec);
    Csv csv({"detuning_THz", "signal_angle_deg", "intensity_norm"});
    for (std::size_t a = 0; a < grid.angle.size(); ++a)
        for (std::size_t n = 0; n < grid.detuning.size(); ++n)
            csv.row({grid.detuning[n] / kTHz, degrees(grid.angle[a]), grid.at(a, n)});
    r.files.push_back({"xmap_grid.csv", csv.take()});

    // Collection lines in the same coordinates: mirror (on axis) and grating.
    const double nu0 = degenerate_frequency(d.pump.wavelength);
    const double wp = d.pump.angular_frequency();
    Csv overlay({"detuning_THz", "initial_signal_angle_deg", "transformed_signal_angle_deg",
                 "transformed_idler_angle_deg", "branch_angle_deg"});
    for (double nu : grid.detuning)
    {
        const double ws = kTwoPi * (nu0 + nu);
        std::optional<double> ts, ti, branch;
        if (ws > 0.0 && ws < wp)
        {
            try
            {
                ts = degrees(angle_for_frequency(ws, d.grating));
                ti = degrees(angle_for_frequency(wp - ws, d.grating));
            }
            catch (const DomainError&)
            {
                ts.reset();
                ti.reset();
            }
            if (auto b = branch_angle(d.crystal, d.pump, nu))
                branch = degrees(*b);
        }
        overlay.row({nu / kTHz, 0.0, ts, ti, branch});
    }
    r.files.push_back({"xmap_overlay.csv", overlay.take()});

    r.summary = {{"detuning", axis_json(config.grids.xmap_detuning, kTHz, "THz")},
                 {"angle", {{"min", rounded(degrees(config.grids.xmap_angle.min))},
                            {"max", rounded(degrees(config.grids.xmap_angle.max))},
                            {"points", config.grids.xmap_angle.points},
                            {"unit", "deg"}}},
                 {"raw_maximum_au", rounded(grid.raw_maximum)},
                 {"masked_points", grid.masked_points},
                 {"layout", "xmap_grid.csv rows: angle-major, detuning fastest"}};
    r.files.push_back({"xmap.json", dump(r.summary)});
}

void run_spectrum(PipelineResult& r, const RunConfig& config, const SourceDesign& d,
                  Execution exec)
{
    const auto modes = modes_of(config.efficiency);
    r.summary = json::object();
    for (const Spectrum& s : spectra_for(d, config, modes, exec))
        add_spectrum_files(r, s);
}

void run_g2(PipelineResult& r, const RunConfig& config, const SourceDesign& d, Execution exec)
{
    const auto modes = modes_of(config.efficiency);
    r.summary = json::object();
    for (const Spectrum& s : spectra_for(d, config, modes, exec))
        add_g2_files(r, s, config.grids.padding);
}

void run_sweep_waist(PipelineResult& r, const RunConfig& config, const SourceDesign& d,
                     Execution exec)
{
    const auto modes = modes_of(config.efficiency);
    const auto waists =
        log_spaced(config.sweeps.waist_min, config.sweeps.waist_max, config.sweeps.waist_points);
    const SweepResult sweep = waist_sweep(d, waists, config.grids.spectrum, modes, exec);
    std::vector<std::string> header{"waist_um"};
    for (const auto& [name, _] : sweep.objectives)
        header.push_back(name + "_THz");
    Csv csv(header);
    for (std::size_t i = 0; i < sweep.values.size(); ++i)
    {
        std::vector<double> row{sweep.values[i] / kMicron};
        for (const auto& [_, v] : sweep.objectives)
            row.push_back(v[i] / kTHz);
        csv.row(row);
    }
    r.files.push_back({"sweep_waist.csv", csv.take()});
    r.warnings = sweep.warnings;
    r.summary = {{"parameter", sweep.parameter}, {"mode", sweep.mode}, {"points", waists.size()}};
    r.files.push_back({"sweep_waist.json", dump(r.summary)});
}

void run_rate_sweep(PipelineResult& r, const RunConfig& config, const SourceDesign& d,
                    Execution exec)
{
    const auto waists = log_spaced(config.sweeps.rate_waist_min, config.sweeps.rate_waist_max,
                                   config.sweeps.rate_points);
    const RateScaling scaling = rate_vs_waist(d, waists, exec);
    Csv csv({"waist_um", "peak_rate_au"});
    const auto& rate = scaling.samples.objective("peak_rate");
    for (std::size_t i = 0; i < waists.size(); ++i)
        csv.row({waists[i] / kMicron, rate[i]});
    r.files.push_back({"rate_sweep.csv", csv.take()});
    r.warnings = scaling.samples.warnings;
    r.summary = {{"loglog_slope", rounded(scaling.slope)},
                 {"waist_min_um", rounded(waists.front() / kMicron)},
                 {"waist_max_um", rounded(waists.back() / kMicron)},
                 {"points", waists.size()}};
    r.files.push_back({"rate_sweep.json", dump(r.summary)});
}

void run_optimize_gamma(PipelineResult& r, const RunConfig& config, const SourceDesign& d,
                        Execution exec)
{
    GammaOptimum opt = optimize_gamma(d, config.sweeps.gamma_min, config.sweeps.gamma_max,
                                      config.grids.spectrum, config.sweeps.gamma_tolerance, exec);
    auto trace = opt.trace;
    std::sort(trace.begin(), trace.end());
    Csv csv({"gamma", "bandwidth_ideal_THz"});
    for (const auto& [g, b] : trace)
        csv.row({g, b / kTHz});
    r.files.push_back({"optimize_gamma.csv", csv.take()});
    if (opt.at_boundary)
        r.warnings.push_back("gamma optimum " + format_number(opt.gamma) +
                             " sits at the edge of the bracket; no interior maximum found");
    r.summary = {{"gamma_opt", rounded(opt.gamma)},
                 {"bandwidth_ideal_THz", rounded(opt.bandwidth / kTHz)},
                 {"at_boundary", opt.at_boundary},
                 {"bracket", {rounded(config.sweeps.gamma_min), rounded(config.sweeps.gamma_max)}},
                 {"tolerance", rounded(config.sweeps.gamma_tolerance)},
                 {"evaluations", trace.size()}};
    r.files.push_back({"optimize_gamma.json", dump(r.summary)});
}

json edge_json(const DetuningEdge& e)
{
    return {{"detuning_THz", rounded(e.detuning / kTHz)},
            {"kind", e.kind == EdgeKind::crossing ? "crossing" : "kinematic"}};
}

void run_report(PipelineResult& r, const RunConfig& config, const SourceDesign& d, Execution exec)
{
    const auto started = std::chrono::steady_clock::now();
    const EfficiencyMode both[] = {EfficiencyMode::ideal, EfficiencyMode::anchored};
    const auto spectra = spectra_for(d, config, both, exec);
    const Spectrum& in = spectra[0];
    const Spectrum& ideal = spectra[1];
    const Spectrum& anchored = spectra[2];

    json table = json::object();
    double dnu[3], dtau[3];
    for (std::size_t i = 0; i < 3; ++i)
    {
        const Spectrum& s = spectra[i];
        dnu[i] = bandwidth(s);
        dtau[i] = correlation_time(correlation_function(s, config.grids.padding));
        table[s.label] = {{"bandwidth_THz", rounded(dnu[i] / kTHz)},
                          {"correlation_time_fs", rounded(dtau[i] / kFemtosecond)},
                          {"time_bandwidth_product", rounded(dnu[i] * dtau[i])}};
    }

    const double wc = d.central().angular_frequency();
    const double eff_center = pair_efficiency(wc, d.pump.angular_frequency(), d.grating);
    const AccessibleRange range =
        accessible_detuning_range(d.crystal, d.pump, config.grids.aperture_half_angle);

    for (auto& w : paraxial_warnings(d.modes(wc, 0.0, 0.0), d.central(), d.central(), d.crystal,
                                     d.pump))
        r.warnings.push_back(std::move(w));

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    r.summary = {
        {"table", table},
        {"central_ratio",
         {{"ideal", rounded(ideal.central_value / in.central_value)},
          {"anchored", rounded(anchored.central_value / in.central_value)},
          {"anchored_expected", rounded(eff_center)}}},
        {"broadening_factor", rounded(dnu[0] / dnu[2])},
        {"accessible_range",
         {{"aperture_half_angle_deg", rounded(degrees(config.grids.aperture_half_angle))},
          {"lower", edge_json(range.lower)},
          {"upper", edge_json(range.upper)},
          {"peak_branch_angle_deg", rounded(degrees(range.peak_branch_angle))}}},
        {"design",
         {{"cut_angle_deg", rounded(degrees(d.crystal.cut_angle))},
          {"fiber_magnification", rounded(d.fiber.magnification)},
          {"grating_incidence_deg", rounded(degrees(*d.grating.incidence))},
          {"grating_magnification", rounded(d.grating.magnification)},
          {"collection_waist_center_um", rounded(d.waist_at(wc) / kMicron)},
          {"pump_waist_um", rounded(d.pump.waist / kMicron)}}},
        {"spectrum_grid", axis_json(config.grids.spectrum, kTHz, "THz")},
    };
    r.files.push_back({"report.json", dump(r.summary)});
    // Timing stays out of report.json so reruns compare byte for byte.
    r.summary["elapsed_s"] = elapsed;
}
}  // namespace

PipelineResult run_pipeline(std::string_view subcommand, const RunConfig& config, Execution exec)
{
    if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end())
        throw ConfigError("subcommand", "unknown subcommand '" + std::string(subcommand) + "'");
    const SourceDesign design = config.design();

    PipelineResult r;
    r.subcommand = std::string(subcommand);
    if (subcommand == "xmap")
        run_xmap(r, config, design, exec);
    else if (subcommand == "spectrum")
        run_spectrum(r, config, design, exec);
    else if (subcommand == "g2")
        run_g2(r, config, design, exec);
    else if (subcommand == "sweep-waist")
        run_sweep_waist(r, config, design, exec);
    else if (subcommand == "optimize-gamma")
        run_optimize_gamma(r, config, design, exec);
    else if (subcommand == "rate-sweep")
        run_rate_sweep(r, config, design, exec);
    else
        run_report(r, config, design, exec);
    r.files.push_back({"effective_config.ini", effective_config_dump(config)});
    return r;
}

void write_outputs(const PipelineResult& result, const std::filesystem::path& directory)
{
    std::filesystem::create_directories(directory);
    for (const auto& f : result.files)
    {
        std::ofstream out(directory / f.name, std::ios::binary);
        out << f.contents;
        if (!out)
            throw std::runtime_error("cannot write " + (directory / f.name).string());
    }
}
}  // namespace biphoton
