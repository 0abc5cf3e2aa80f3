#include "biphoton/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace biphoton
{
std::string_view to_string(EfficiencySelection selection)
{
    switch (selection)
    {
    case EfficiencySelection::ideal: return "ideal";
    case EfficiencySelection::anchored: return "anchored";
    case EfficiencySelection::both: return "both";
    }
    return "both";
}

EfficiencySelection efficiency_selection_from_string(std::string_view text)
{
    if (text == "ideal")
        return EfficiencySelection::ideal;
    if (text == "anchored")
        return EfficiencySelection::anchored;
    if (text == "both")
        return EfficiencySelection::both;
    throw DomainError("efficiency must be one of ideal, anchored, both; got '" +
                      std::string(text) + "'");
}

std::vector<EfficiencyMode> modes_of(EfficiencySelection selection)
{
    switch (selection)
    {
    case EfficiencySelection::ideal: return {EfficiencyMode::ideal};
    case EfficiencySelection::anchored: return {EfficiencyMode::anchored};
    case EfficiencySelection::both: break;
    }
    return {EfficiencyMode::ideal, EfficiencyMode::anchored};
}

namespace
{
std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Shortest text that reads back to the same double.
std::string fmt(double v)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? end : buf);
}

double parse_double(std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw DomainError("expected a number, got '" + std::string(text) + "'");
    return value;
}

std::size_t parse_count(std::string_view text)
{
    text = trim(text);
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw DomainError("expected a non-negative integer, got '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

SellmeierCoefficients parse_sellmeier(std::string_view text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 4)
        throw DomainError("Sellmeier coefficients need four values A, B, C, D");
    return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]),
            parse_double(parts[3])};
}

std::string format_sellmeier(const SellmeierCoefficients& s)
{
    return fmt(s.a) + ", " + fmt(s.b) + ", " + fmt(s.c) + ", " + fmt(s.d);
}

std::vector<EfficiencyAnchor> parse_anchors(std::string_view text)
{
    std::vector<EfficiencyAnchor> anchors;
    for (auto item : split(text, ','))
    {
        const auto pair = split(item, ':');
        if (pair.size() != 2)
            throw DomainError("anchors are written wavelength_m:efficiency, comma separated");
        anchors.push_back({parse_double(pair[0]), parse_double(pair[1])});
    }
    return anchors;
}

std::string format_anchors(const std::vector<EfficiencyAnchor>& anchors)
{
    std::string out;
    for (std::size_t i = 0; i < anchors.size(); ++i)
        out += (i ? ", " : "") + fmt(anchors[i].wavelength) + ":" + fmt(anchors[i].efficiency);
    return out;
}

std::optional<double> parse_auto(std::string_view text)
{
    if (trim(text) == "auto")
        return std::nullopt;
    return parse_double(text);
}

std::string format_auto(const std::optional<double>& v) { return v ? fmt(*v) : "auto"; }

struct Key
{
    const char* section;
    const char* name;
    const char* doc;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define BIPHOTON_DOUBLE(sec, key, doc, field)                                                  \
    Key                                                                                       \
    {                                                                                         \
        sec, key, doc, [](RunConfig& c, std::string_view v) { c.field = parse_double(v); },   \
            [](const RunConfig& c) { return fmt(c.field); }                                   \
    }
#define BIPHOTON_COUNT(sec, key, doc, field)                                                   \
    Key                                                                                       \
    {                                                                                         \
        sec, key, doc, [](RunConfig& c, std::string_view v) { c.field = parse_count(v); },    \
            [](const RunConfig& c) { return std::to_string(c.field); }                        \
    }

const std::vector<Key>& schema()
{
    static const std::vector<Key> keys = {
        {"crystal", "name", "label only",
         [](RunConfig& c, std::string_view v) { c.crystal.name = std::string(trim(v)); },
         [](const RunConfig& c) { return c.crystal.name; }},
        BIPHOTON_DOUBLE("crystal", "length_m", "crystal length", crystal.length),
        {"crystal", "sellmeier_ordinary",
         "A, B, C, D for n^2 = A + B/(l^2 - C) - D l^2, l in um",
         [](RunConfig& c, std::string_view v) { c.crystal.ordinary = parse_sellmeier(v); },
         [](const RunConfig& c) { return format_sellmeier(c.crystal.ordinary); }},
        {"crystal", "sellmeier_extraordinary", "principal extraordinary index, same form",
         [](RunConfig& c, std::string_view v) { c.crystal.extraordinary = parse_sellmeier(v); },
         [](const RunConfig& c) { return format_sellmeier(c.crystal.extraordinary); }},
        {"crystal", "cut_angle_rad", "angle between pump and optic axis; auto = phase-matched",
         [](RunConfig& c, std::string_view v) { c.cut_angle = parse_auto(v); },
         [](const RunConfig& c) { return format_auto(c.cut_angle); }},
        BIPHOTON_DOUBLE("crystal", "walkoff_displacement_m", "lateral pump drift over the crystal",
                        crystal.walkoff_displacement),
        BIPHOTON_DOUBLE("crystal", "window_min_m", "Sellmeier validity, short end",
                        crystal.window_min),
        BIPHOTON_DOUBLE("crystal", "window_max_m", "Sellmeier validity, long end",
                        crystal.window_max),
        {"pump", "wavelength_m", "pump vacuum wavelength",
         [](RunConfig& c, std::string_view v) { c.pump.wavelength = Wavelength(parse_double(v)); },
         [](const RunConfig& c) { return fmt(c.pump.wavelength.meters()); }},
        BIPHOTON_DOUBLE("pump", "waist_m", "pump waist", pump.waist),
        BIPHOTON_DOUBLE("fiber", "numerical_aperture", "single-mode fiber NA",
                        fiber.numerical_aperture),
        {"fiber", "reference_wavelength_m", "wavelength where the target waist holds",
         [](RunConfig& c, std::string_view v) { c.fiber.reference = Wavelength(parse_double(v)); },
         [](const RunConfig& c) { return fmt(c.fiber.reference.meters()); }},
        BIPHOTON_DOUBLE("fiber", "target_waist_m", "collection waist at the reference wavelength",
                        target_waist),
        {"fiber", "magnification", "Gamma; auto = target_waist / W_f(reference)",
         [](RunConfig& c, std::string_view v) { c.fiber_magnification = parse_auto(v); },
         [](const RunConfig& c) { return format_auto(c.fiber_magnification); }},
        BIPHOTON_DOUBLE("grating", "groove_density_per_m", "lines per meter",
                        grating.groove_density),
        {"grating", "incidence_rad", "theta0; auto = central wavelength on the fiber axis",
         [](RunConfig& c, std::string_view v) { c.grating.incidence = parse_auto(v); },
         [](const RunConfig& c) { return format_auto(c.grating.incidence); }},
        BIPHOTON_DOUBLE("grating", "magnification", "relay angular magnification gamma",
                        grating.magnification),
        {"grating", "efficiency_anchors", "wavelength_m:efficiency, ...",
         [](RunConfig& c, std::string_view v) { c.grating.anchors = parse_anchors(v); },
         [](const RunConfig& c) { return format_anchors(c.grating.anchors); }},
        {"grating", "efficiency_mode", "ideal | anchored | both",
         [](RunConfig& c, std::string_view v) {
             c.efficiency = efficiency_selection_from_string(trim(v));
         },
         [](const RunConfig& c) { return std::string(to_string(c.efficiency)); }},
        BIPHOTON_DOUBLE("detection", "bandwidth_rad_per_s", "detection bandwidth delta omega",
                        detection_bandwidth),
        BIPHOTON_DOUBLE("numerics", "relative_tolerance", "z-quadrature tolerance",
                        quadrature.relative_tolerance),
        {"numerics", "min_panels", "z-quadrature initial panels",
         [](RunConfig& c, std::string_view v) {
             c.quadrature.min_panels = static_cast<int>(parse_count(v));
         },
         [](const RunConfig& c) { return std::to_string(c.quadrature.min_panels); }},
        BIPHOTON_DOUBLE("grid", "xmap_detuning_min_hz", "", grids.xmap_detuning.min),
        BIPHOTON_DOUBLE("grid", "xmap_detuning_max_hz", "", grids.xmap_detuning.max),
        BIPHOTON_COUNT("grid", "xmap_detuning_points", "", grids.xmap_detuning.points),
        BIPHOTON_DOUBLE("grid", "xmap_angle_min_rad", "external signal angle",
                        grids.xmap_angle.min),
        BIPHOTON_DOUBLE("grid", "xmap_angle_max_rad", "", grids.xmap_angle.max),
        BIPHOTON_COUNT("grid", "xmap_angle_points", "", grids.xmap_angle.points),
        BIPHOTON_DOUBLE("grid", "spectrum_detuning_min_hz", "", grids.spectrum.min),
        BIPHOTON_DOUBLE("grid", "spectrum_detuning_max_hz", "", grids.spectrum.max),
        BIPHOTON_COUNT("grid", "spectrum_detuning_points", "", grids.spectrum.points),
        {"grid", "padding_factor", "zero padding for G2 (>= 8)",
         [](RunConfig& c, std::string_view v) { c.grids.padding = static_cast<int>(parse_count(v)); },
         [](const RunConfig& c) { return std::to_string(c.grids.padding); }},
        BIPHOTON_DOUBLE("grid", "aperture_half_angle_rad", "collection aperture for the range check",
                        grids.aperture_half_angle),
        BIPHOTON_DOUBLE("sweep", "waist_min_m", "", sweeps.waist_min),
        BIPHOTON_DOUBLE("sweep", "waist_max_m", "", sweeps.waist_max),
        BIPHOTON_COUNT("sweep", "waist_points", "log spaced", sweeps.waist_points),
        BIPHOTON_DOUBLE("sweep", "rate_waist_min_m", "", sweeps.rate_waist_min),
        BIPHOTON_DOUBLE("sweep", "rate_waist_max_m", "", sweeps.rate_waist_max),
        BIPHOTON_COUNT("sweep", "rate_points", "log spaced", sweeps.rate_points),
        BIPHOTON_DOUBLE("sweep", "gamma_min", "", sweeps.gamma_min),
        BIPHOTON_DOUBLE("sweep", "gamma_max", "", sweeps.gamma_max),
        BIPHOTON_DOUBLE("sweep", "gamma_tolerance", "", sweeps.gamma_tolerance),
        {"output", "directory", "where result files go",
         [](RunConfig& c, std::string_view v) { c.output_directory = std::string(trim(v)); },
         [](const RunConfig& c) { return c.output_directory; }},
    };
    return keys;
}

#undef BIPHOTON_DOUBLE
#undef BIPHOTON_COUNT

// Field-level invariants, reported by dotted path.
void check_fields(const RunConfig& c)
{
    auto require = [](bool ok, const char* path, const char* what) {
        if (!ok)
            throw ConfigError(path, what);
    };
    require(c.crystal.length > 0.0, "crystal.length_m", "must be positive");
    require(!c.cut_angle || (*c.cut_angle >= 0.0 && *c.cut_angle <= kPi / 2),
            "crystal.cut_angle_rad", "must lie in [0, pi/2]");
    require(c.crystal.window_min > 0.0, "crystal.window_min_m", "must be positive");
    require(c.crystal.window_max > c.crystal.window_min, "crystal.window_max_m",
            "must exceed window_min_m");
    require(c.pump.waist > 0.0, "pump.waist_m", "must be positive");
    require(c.fiber.numerical_aperture > 0.0 && c.fiber.numerical_aperture < 1.0,
            "fiber.numerical_aperture", "must lie in (0, 1)");
    require(c.target_waist > 0.0, "fiber.target_waist_m", "must be positive");
    require(!c.fiber_magnification || *c.fiber_magnification > 0.0, "fiber.magnification",
            "must be positive");
    require(c.grating.groove_density > 0.0, "grating.groove_density_per_m", "must be positive");
    require(c.grating.magnification > 0.0, "grating.magnification", "must be positive");
    require(c.detection_bandwidth > 0.0, "detection.bandwidth_rad_per_s", "must be positive");
    require(c.quadrature.relative_tolerance > 0.0, "numerics.relative_tolerance",
            "must be positive");
    require(c.quadrature.min_panels >= 1, "numerics.min_panels", "must be at least 1");
    require(c.grids.padding >= 8, "grid.padding_factor", "must be at least 8");
    require(c.grids.aperture_half_angle > 0.0 && c.grids.aperture_half_angle < kPi / 2,
            "grid.aperture_half_angle_rad", "must lie in (0, pi/2)");
    require(c.sweeps.gamma_min > 0.0 && c.sweeps.gamma_max > c.sweeps.gamma_min,
            "sweep.gamma_max", "bracket must satisfy 0 < gamma_min < gamma_max");
    require(c.sweeps.gamma_tolerance > 0.0, "sweep.gamma_tolerance", "must be positive");
    require(c.sweeps.waist_min > 0.0 && c.sweeps.waist_max > c.sweeps.waist_min,
            "sweep.waist_max_m", "range must satisfy 0 < min < max");
    require(c.sweeps.waist_points >= 2, "sweep.waist_points", "must be at least 2");
    require(c.sweeps.rate_waist_min > 0.0 && c.sweeps.rate_waist_max > c.sweeps.rate_waist_min,
            "sweep.rate_waist_max_m", "range must satisfy 0 < min < max");
    require(c.sweeps.rate_points >= 2, "sweep.rate_points", "must be at least 2");
    require(!c.output_directory.empty(), "output.directory", "must not be empty");

    auto axis = [](const AxisRange& r, const char* path) {
        try
        {
            r.validate(path);
        }
        catch (const DomainError& e)
        {
            throw ConfigError(path, e.what());
        }
    };
    axis(c.grids.xmap_detuning, "grid.xmap_detuning");
    axis(c.grids.xmap_angle, "grid.xmap_angle");
    axis(c.grids.spectrum, "grid.spectrum_detuning");

    auto structural = [](const char* path, auto&& fn) {
        try
        {
            fn();
        }
        catch (const DomainError& e)
        {
            throw ConfigError(path, e.what());
        }
    };
    structural("crystal", [&] {
        CrystalSpec probe = c.crystal;
        probe.cut_angle = c.cut_angle.value_or(0.0);
        probe.validate();
    });
    structural("grating", [&] { c.grating.validate(); });
}
}  // namespace

SourceDesign RunConfig::design() const
{
    check_fields(*this);
    SourceDesign d;
    d.crystal = crystal;
    d.pump = pump;
    try
    {
        d.crystal.cut_angle = cut_angle ? *cut_angle : solve_cut_angle(crystal, pump.wavelength);
    }
    catch (const std::exception& e)
    {
        throw ConfigError("crystal.cut_angle_rad", e.what());
    }
    d.fiber = fiber;
    d.fiber.magnification =
        fiber_magnification ? *fiber_magnification
                            : select_gamma_train(target_waist, fiber.reference, fiber);
    try
    {
        d.grating = resolved(grating, d.central());
    }
    catch (const DomainError& e)
    {
        throw ConfigError("grating.incidence_rad", e.what());
    }
    d.detection_bandwidth = detection_bandwidth;
    d.quadrature = quadrature;
    return d;
}

RunConfig default_config()
{
    RunConfig c;
    c.fiber.reference = Wavelength(2.0 * c.pump.wavelength.meters());
    return c;
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config = default_config();
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError(where, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            bool known = false;
            for (const Key& k : schema())
                known = known || section == k.section;
            if (!known)
                throw ConfigError(where, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where, "expected 'key = value'");
        if (section.empty())
            throw ConfigError(where, "key outside of any [section]");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const std::string path = section + "." + key;

        const Key* match = nullptr;
        for (const Key& k : schema())
            if (section == k.section && key == k.name)
                match = &k;
        if (!match)
            throw ConfigError(where, "unknown key '" + path + "'");
        if (config.explicit_keys.count(path))
            throw ConfigError(where, "duplicate key '" + path + "'");
        try
        {
            match->set(config, value);
        }
        catch (const DomainError& e)
        {
            throw ConfigError(where + ": " + path, e.what());
        }
        config.explicit_keys.insert(path);
    }

    // The fiber reference follows the pump unless given.
    if (!config.explicit_keys.count("fiber.reference_wavelength_m"))
        config.fiber.reference = Wavelength(2.0 * config.pump.wavelength.meters());
    check_fields(config);
    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), "cannot open configuration file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string effective_config_dump(const RunConfig& config)
{
    std::ostringstream out;
    out << "# Effective configuration. Keys marked '# default' were not set explicitly.\n";
    std::string section;
    for (const Key& k : schema())
    {
        if (section != k.section)
        {
            section = k.section;
            out << "\n[" << section << "]\n";
        }
        const std::string path = section + "." + k.name;
        out << k.name << " = " << k.get(config);
        if (!config.explicit_keys.count(path))
            out << "  # default";
        out << "\n";
    }
    return out.str();
}
}  // namespace biphoton
