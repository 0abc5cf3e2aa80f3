// Command-line front end: one subcommand per pipeline, files under --out.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/pipelines.hpp"

namespace
{
enum Exit
{
    ok = 0,
    failure = 1,
    config_error = 2,
    numerical_error = 3
};

int report_error(const std::string& kind, const std::string& message, int code,
                 const std::filesystem::path& out)
{
    const nlohmann::json record = {{"error", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << record.dump() << "\n";
    if (!out.empty())
    {
        std::error_code ec;
        std::filesystem::create_directories(out, ec);
        std::ofstream f(out / "error.json");
        if (f)
            f << record.dump(2) << "\n";
    }
    return code;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Broadband biphoton source simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::string efficiency;
    bool quiet = false;
    bool serial = false;
    app.add_option("--config", config_path, "key-value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides output.directory)");
    app.add_option("--efficiency", efficiency, "transformed spectra to produce")
        ->check(CLI::IsMember({"ideal", "anchored", "both"}));
    app.add_flag("--quiet", quiet, "suppress warnings");
    app.add_flag("--serial", serial, "disable OpenMP parallel kernels");

    const char* help[] = {
        "Fig. 1-style frequency-angular grid with collection overlays",
        "initial and transformed coincidence spectra",
        "second-order correlation functions",
        "transformed bandwidth versus matched collection waist",
        "golden-section search over the relay magnification",
        "central coincidence rate versus waist",
        "bandwidth / correlation-time summary",
    };
    const auto& names = biphoton::subcommands();
    for (std::size_t i = 0; i < names.size(); ++i)
        app.add_subcommand(names[i], help[i]);

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    std::filesystem::path out = out_dir;
    biphoton::RunConfig config;
    try
    {
        config = config_path.empty() ? biphoton::default_config()
                                     : biphoton::load_config(config_path);
        if (!efficiency.empty())
            config.efficiency = biphoton::efficiency_selection_from_string(efficiency);
        if (out.empty())
            out = config.output_directory;
        else
            config.output_directory = out.string();
    }
    catch (const biphoton::ConfigError& e)
    {
        return report_error("config", e.what(), config_error, out_dir);
    }

    try
    {
        const auto exec =
            serial ? biphoton::Execution::serial : biphoton::Execution::parallel;
        const biphoton::PipelineResult result = biphoton::run_pipeline(sub, config, exec);
        if (!quiet)
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << "\n";
        biphoton::write_outputs(result, out);
        if (!quiet)
            std::cout << sub << ": wrote " << result.files.size() << " files to " << out.string()
                      << "\n";
    }
    catch (const biphoton::ConfigError& e)
    {
        return report_error("config", e.what(), config_error, out);
    }
    catch (const biphoton::PhaseMatchingError& e)
    {
        return report_error("phase_matching", e.what(), numerical_error, out);
    }
    catch (const biphoton::NumericalError& e)
    {
        return report_error("numerical", e.what(), numerical_error, out);
    }
    catch (const biphoton::DomainError& e)
    {
        return report_error("domain", e.what(), numerical_error, out);
    }
    catch (const std::exception& e)
    {
        return report_error("io", e.what(), failure, out);
    }
    return ok;
}
