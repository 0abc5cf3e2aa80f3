#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "biphoton/config.hpp"
#include "biphoton/execution.hpp"

namespace biphoton
{
/// One file produced by a pipeline, held in memory until the run finishes.
struct OutputFile
{
    std::string name;
    std::string contents;
};

struct PipelineResult
{
    std::string subcommand;
    std::vector<OutputFile> files;
    std::vector<std::string> warnings;
    nlohmann::json summary;  // what the subcommand's JSON file holds, if any

    const OutputFile* find(std::string_view name) const;
};

const std::vector<std::string>& subcommands();

/// Run `subcommand` on `config`. Nothing touches the filesystem here; the
/// effective-config dump is always among the files.
PipelineResult run_pipeline(std::string_view subcommand, const RunConfig& config,
                            Execution exec = Execution::parallel);

/// Write every file of `result` under `directory`, creating it if needed.
void write_outputs(const PipelineResult& result, const std::filesystem::path& directory);

/// Fixed 9-significant-digit text used by every output.
std::string format_number(double value);

/// Value rounded to 9 significant digits, for JSON fields.
double rounded(double value);
}  // namespace biphoton
