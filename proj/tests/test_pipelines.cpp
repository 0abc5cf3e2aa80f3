#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "biphoton/designer.hpp"
#include "biphoton/pipelines.hpp"

using namespace biphoton;

namespace
{
std::vector<std::vector<double>> read_csv(const std::string& text, std::string* header = nullptr)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header)
        *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line))
    {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ','))
            row.push_back(cell.empty() ? NAN : std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

RunConfig small_config()
{
    RunConfig c = default_config();
    c.grids.spectrum = {-200e12, 200e12, 401};
    return c;
}
}  // namespace

TEST_CASE("number formatting keeps nine significant digits")
{
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(36.4380385925) == "36.4380386");
    CHECK(rounded(2.0 / 3.0) == 0.666666667);
}

TEST_CASE("report carries the bandwidth / correlation-time quartet")
{
    const PipelineResult r = run_pipeline("report", default_config());
    const auto j = nlohmann::json::parse(r.find("report.json")->contents);
    for (const char* label : {"initial", "transformed_ideal", "transformed_anchored"})
    {
        CAPTURE(label);
        CHECK(j["table"][label]["bandwidth_THz"].get<double>() > 0.0);
        CHECK(j["table"][label]["correlation_time_fs"].get<double>() > 0.0);
    }
    CHECK(j["central_ratio"]["ideal"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(j.contains("broadening_factor"));
    CHECK(j["design"]["cut_angle_deg"].get<double>() == doctest::Approx(36.4380386));
    CHECK(r.find("effective_config.ini") != nullptr);
}

TEST_CASE("g2 files are on a delay grid symmetric about zero")
{
    const PipelineResult r = run_pipeline("g2", small_config());
    for (const char* name : {"g2_initial.csv", "g2_transformed_ideal.csv", "g2_transformed_anchored.csv"})
    {
        CAPTURE(name);
        std::string header;
        const auto rows = read_csv(r.find(name)->contents, &header);
        CHECK(header == "delay_fs,g2");
        REQUIRE(rows.size() % 2 == 1);
        const std::size_t mid = rows.size() / 2;
        CHECK(rows[mid][0] == 0.0);
        CHECK(rows[mid][1] == 1.0);
        for (std::size_t k = 1; k <= mid; ++k)
        {
            if (rows[mid + k][0] != -rows[mid - k][0])
                FAIL("asymmetric delay at " << k);
        }
    }
}

TEST_CASE("spectrum files and efficiency selection")
{
    RunConfig c = small_config();
    c.efficiency = EfficiencySelection::ideal;
    const PipelineResult r = run_pipeline("spectrum", c);
    CHECK(r.find("spectrum_initial.csv") != nullptr);
    CHECK(r.find("spectrum_transformed_ideal.csv") != nullptr);
    CHECK(r.find("spectrum_transformed_anchored.csv") == nullptr);
    std::string header;
    const auto rows = read_csv(r.find("spectrum_initial.csv")->contents, &header);
    CHECK(header == "detuning_THz,rate_au,amplitude_re_au,amplitude_im_au");
    CHECK(rows.size() == 401);
    CHECK(rows.front()[0] == -200.0);
    CHECK(rows.back()[0] == 200.0);
}

TEST_CASE("sweep-waist row at 500 um equals a direct designer call")
{
    RunConfig c = small_config();
    c.sweeps.waist_min = 48e-6;
    c.sweeps.waist_max = 500e-6;
    c.sweeps.waist_points = 3;
    const PipelineResult r = run_pipeline("sweep-waist", c);
    std::string header;
    const auto rows = read_csv(r.find("sweep_waist.csv")->contents, &header);
    CHECK(header == "waist_um,bandwidth_ideal_THz,bandwidth_anchored_THz");
    REQUIRE(rows.size() == 3);
    CHECK(rows[2][0] == 500.0);

    const EfficiencyMode modes[] = {EfficiencyMode::ideal, EfficiencyMode::anchored};
    const double w[] = {500e-6};
    const SweepResult direct = waist_sweep(c.design(), w, c.grids.spectrum, modes);
    CHECK(rows[2][1] == std::stod(format_number(direct.objective("bandwidth_ideal")[0] / kTHz)));
    CHECK(rows[2][2] == std::stod(format_number(direct.objective("bandwidth_anchored")[0] / kTHz)));
}

TEST_CASE("xmap overlay and grid layout")
{
    RunConfig c = small_config();
    c.grids.xmap_detuning = {-150e12, 450e12, 61};
    c.grids.xmap_angle = {radians(-10.0), radians(10.0), 21};
    const PipelineResult r = run_pipeline("xmap", c);
    const auto grid = read_csv(r.find("xmap_grid.csv")->contents);
    CHECK(grid.size() == 61 * 21);
    const auto overlay = read_csv(r.find("xmap_overlay.csv")->contents);
    CHECK(overlay.size() == 61);
    // Grating collection is on axis at degeneracy.
    CHECK(std::abs(overlay[15][2]) < 1e-9);
}

TEST_CASE("reruns are byte identical")
{
    const RunConfig c = small_config();
    const auto a = run_pipeline("spectrum", c);
    const auto b = run_pipeline("spectrum", c, Execution::serial);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i)
        CHECK(a.files[i].contents == b.files[i].contents);
}

TEST_CASE("unknown subcommand")
{
    CHECK_THROWS_AS(run_pipeline("plot", default_config()), ConfigError);
}
