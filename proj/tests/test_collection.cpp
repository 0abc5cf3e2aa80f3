#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "biphoton/collection.hpp"
#include "biphoton/design.hpp"
#include "biphoton/errors.hpp"
#include "oracles.hpp"

using namespace biphoton;

TEST_CASE("fiber mode and collection waists")
{
    FiberTrainSpec fiber;
    CHECK(fiber_mode_waist(Wavelength(650e-9), fiber) == doctest::Approx(1.72417855016e-6).epsilon(1e-10));
    CHECK(fiber_mode_waist(Wavelength(325e-9), fiber) == doctest::Approx(8.62089275081e-7).epsilon(1e-10));
    fiber.magnification = select_gamma_train(48e-6, Wavelength(650e-9), fiber);
    CHECK(fiber.magnification == doctest::Approx(27.8393441303).epsilon(1e-10));
    CHECK(collection_waist(Wavelength(520e-9), fiber) == doctest::Approx(38.4e-6).epsilon(1e-10));
    CHECK_THROWS_AS(select_gamma_train(-1.0, Wavelength(650e-9), fiber), DomainError);
}


TEST_CASE("closed-form transverse overlap against 3-D quadrature")
{
    const SourceDesign d = default_design();
    int i = 0;
    for (const auto& draw : oracles::overlap_draws(d, 5, 20240607))
    {
        CAPTURE(i++);
        SimpsonOptions tight;
        tight.relative_tolerance = 1e-10;
        const auto closed = overlap_amplitude(draw.signal_omega, draw.modes, draw.crystal, d.pump, tight);
        const auto oracle = oracles::brute_force_overlap(draw.signal_omega, draw.modes, draw.crystal, d.pump);
        CHECK(std::abs(closed - oracle) / std::abs(oracle) < 1e-4);
    }
}

TEST_CASE("collinear amplitude is real and even in detuning")
{
    const SourceDesign d = default_design();
    const double nu0 = degenerate_frequency(d.pump.wavelength);
    const double wp = d.pump.angular_frequency();
    for (double nu : {10e12, 45e12, 120e12})
    {
        const double ws = kTwoPi * (nu0 + nu);
        const auto plus = overlap_amplitude(ws, d.modes(ws, 0, 0), d.crystal, d.pump, d.quadrature);
        const auto minus = overlap_amplitude(wp - ws, d.modes(wp - ws, 0, 0), d.crystal, d.pump, d.quadrature);
        CHECK(std::abs(plus.imag()) <= 1e-9 * std::abs(plus));
        CHECK(std::abs(plus - minus) <= 1e-9 * std::abs(plus));
    }
}

TEST_CASE("pump walk-off lowers the central rate monotonically")
{
    SourceDesign d = default_design();
    const double wc = d.central().angular_frequency();
    double prev = INFINITY;
    for (double walk : {0.0, 25e-6, 50e-6, 100e-6, 200e-6})
    {
        d.crystal.walkoff_displacement = walk;
        const double r = coincidence_rate(wc, d.modes(wc, 0, 0), d.crystal, d.pump, d.quadrature);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("central rate falls as W^-2 for wide matched modes")
{
    const SourceDesign base = default_design();
    auto rate = [&](double w) {
        const SourceDesign d = base.with_matched_waist(w);
        const double wc = d.central().angular_frequency();
        return coincidence_rate(wc, d.modes(wc, 0, 0), d.crystal, d.pump, d.quadrature);
    };
    const double ratio = rate(200e-6) / rate(400e-6);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("evanescent and out-of-range inputs")
{
    const SourceDesign d = default_design();
    CollectionModes m;
    CHECK_THROWS_AS(overlap_setup(-1.0, m, d.crystal, d.pump), DomainError);
    m.signal_waist = 0.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
}

TEST_CASE("tight-focus warning")
{
    const SourceDesign d = default_design().with_matched_waist(15e-6);
    const double wc = d.central().angular_frequency();
    const auto w = paraxial_warnings(d.modes(wc, 0, 0), d.central(), d.central(), d.crystal, d.pump);
    CHECK(w.size() == 3);
    const SourceDesign wide = default_design();
    CHECK(paraxial_warnings(wide.modes(wc, 0, 0), wide.central(), wide.central(), wide.crystal, wide.pump).empty());
}
