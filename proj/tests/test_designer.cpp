#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "biphoton/designer.hpp"

using namespace biphoton;

namespace
{
const AxisRange kGrid{-200e12, 200e12, 401};
}

TEST_CASE("log spacing and slope fit")
{
    const auto v = log_spaced(100e-6, 500e-6, 9);
    CHECK(v.front() == 100e-6);
    CHECK(v.back() == 500e-6);
    CHECK(v[4] == doctest::Approx(std::sqrt(100e-6 * 500e-6)).epsilon(1e-12));
    std::vector<double> y(v.size());
    std::transform(v.begin(), v.end(), y.begin(), [](double x) { return 3.0 / (x * x); });
    CHECK(loglog_slope(v, y) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("waist sweep is deterministic and independent of evaluation order")
{
    const SourceDesign d = default_design();
    const EfficiencyMode modes[] = {EfficiencyMode::ideal, EfficiencyMode::anchored};
    const std::vector<double> waists{30e-6, 48e-6, 150e-6, 500e-6};
    const SweepResult par = waist_sweep(d, waists, kGrid, modes, Execution::parallel);
    const SweepResult ser = waist_sweep(d, waists, kGrid, modes, Execution::serial);
    CHECK(par.objective("bandwidth_ideal") == ser.objective("bandwidth_ideal"));
    CHECK(par.objective("bandwidth_anchored") == ser.objective("bandwidth_anchored"));

    // Each point alone, visited backwards.
    for (std::size_t i = waists.size(); i-- > 0;)
    {
        const double w[] = {waists[i]};
        const SweepResult one = waist_sweep(d, w, kGrid, modes, Execution::serial);
        CHECK(one.objective("bandwidth_ideal")[0] == par.objective("bandwidth_ideal")[i]);
        CHECK(one.objective("bandwidth_anchored")[0] == par.objective("bandwidth_anchored")[i]);
    }

    const auto& ideal = par.objective("bandwidth_ideal");
    const auto& anchored = par.objective("bandwidth_anchored");
    for (std::size_t i = 0; i < waists.size(); ++i)
        CHECK(anchored[i] <= ideal[i]);
    CHECK(ideal[3] > ideal[1]);
    CHECK(anchored[3] > anchored[1]);
    CHECK(!par.warnings.empty());  // 30 um lies below 100 um
    CHECK(par.mode == "ideal+anchored");
}

TEST_CASE("gamma optimum is a local maximum and stable under a tighter tolerance")
{
    const SourceDesign d = default_design();
    const GammaOptimum a = optimize_gamma(d, 0.9, 1.2, kGrid, 1e-3);
    const GammaOptimum b = optimize_gamma(d, 0.9, 1.2, kGrid, 5e-4);
    CHECK(!a.at_boundary);
    CHECK(std::abs(a.gamma - b.gamma) < 1e-3);
    CHECK(a.bandwidth >= bandwidth_at_gamma(d, a.gamma - 0.1, kGrid));
    CHECK(a.bandwidth >= bandwidth_at_gamma(d, a.gamma + 0.1, kGrid));
    CHECK(a.trace.size() >= 2);
}

TEST_CASE("gamma optimum at the bracket edge is flagged")
{
    const SourceDesign d = default_design();
    const GammaOptimum g = optimize_gamma(d, 0.7, 0.8, kGrid, 1e-3);
    CHECK(g.at_boundary);
}

TEST_CASE("rate scaling samples equal direct evaluations")
{
    const SourceDesign d = default_design();
    const auto waists = log_spaced(100e-6, 400e-6, 3);
    const RateScaling s = rate_vs_waist(d, waists);
    const auto& r = s.samples.objective("peak_rate");
    for (std::size_t i = 0; i < waists.size(); ++i)
    {
        const SourceDesign m = d.with_matched_waist(waists[i]);
        const double wc = m.central().angular_frequency();
        CHECK(r[i] == coincidence_rate(wc, m.modes(wc, 0, 0), m.crystal, m.pump, m.quadrature));
    }
    CHECK(r[0] / r[2] == doctest::Approx(16.0).epsilon(0.1));
    CHECK(peak_rate(d, 100e-6) / peak_rate(d, 200e-6) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("matched-waist design")
{
    const SourceDesign d = default_design().with_matched_waist(500e-6);
    CHECK(d.waist_at(d.central().angular_frequency()) == doctest::Approx(500e-6).epsilon(1e-12));
    CHECK(d.pump.waist == doctest::Approx(500e-6 / std::sqrt(2.0)).epsilon(1e-12));
}
