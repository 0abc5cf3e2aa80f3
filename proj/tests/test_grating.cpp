#include <doctest.h>

#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/grating.hpp"

using namespace biphoton;

namespace
{
GratingSpec default_grating() { return resolved(GratingSpec{}, Wavelength(650e-9)); }
}  // namespace

TEST_CASE("reference incidence puts 650 nm on axis")
{
    CHECK(degrees(solve_theta0(600e3, Wavelength(650e-9))) == doctest::Approx(22.9544994014).epsilon(1e-10));
    CHECK_THROWS_AS(solve_theta0(2000e3, Wavelength(650e-9)), DomainError);
    const GratingSpec g = default_grating();
    CHECK(std::abs(angle_for_frequency(Wavelength(650e-9).angular_frequency(), g)) < 1e-14);
}

TEST_CASE("grating map values and round trip")
{
    const GratingSpec g = default_grating();
    CHECK(angle_for_frequency(Wavelength(600e-9).angular_frequency(), g) ==
          doctest::Approx(0.0285757160224).epsilon(1e-9));
    CHECK(angle_for_frequency(Wavelength(700e-9).angular_frequency(), g) ==
          doctest::Approx(-0.0285757160224).epsilon(1e-9));
    for (double lam : {450e-9, 520e-9, 650e-9, 810e-9, 1000e-9})
    {
        const double w = Wavelength(lam).angular_frequency();
        const double back = frequency_for_angle(angle_for_frequency(w, g), g);
        CHECK(std::abs(back - w) / w < 1e-10);
    }
}

TEST_CASE("collection angle decreases with wavelength")
{
    const GratingSpec g = default_grating();
    double prev = INFINITY;
    for (double lam = 400e-9; lam <= 1100e-9; lam += 25e-9)
    {
        const double t = angle_for_frequency(Wavelength(lam).angular_frequency(), g);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("angular dispersion matches a finite difference")
{
    const GratingSpec g = default_grating();
    for (double lam : {550e-9, 650e-9, 800e-9})
    {
        const double h = 1e-13;
        auto theta = [&](double l) { return angle_for_frequency(Wavelength(l).angular_frequency(), g); };
        const double fd = (theta(lam + h) - theta(lam - h)) / (2 * h);
        CHECK(angular_dispersion(Wavelength(lam), g) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("evanescent orders are rejected")
{
    const GratingSpec g = default_grating();
    CHECK_THROWS_AS(angle_for_frequency(Wavelength(3e-6).angular_frequency(), g), DomainError);
}

TEST_CASE("anchored efficiency is linear between anchors and clamped outside")
{
    const GratingSpec g = default_grating();
    CHECK(efficiency(Wavelength(750e-9), g) == doctest::Approx(0.70));
    CHECK(efficiency(Wavelength(500e-9), g) == doctest::Approx(0.25));
    CHECK(efficiency(Wavelength(625e-9), g) == doctest::Approx(0.475));
    CHECK(efficiency(Wavelength(400e-9), g) == doctest::Approx(0.25));
    CHECK(efficiency(Wavelength(900e-9), g) == doctest::Approx(0.70));

    GratingSpec ideal = g;
    ideal.mode = EfficiencyMode::ideal;
    CHECK(efficiency(Wavelength(500e-9), ideal) == 1.0);

    // 750 nm signal pairs with a 573.53 nm idler for a 325 nm pump.
    const double wp = Wavelength(325e-9).angular_frequency();
    CHECK(pair_efficiency(Wavelength(750e-9).angular_frequency(), wp, g) ==
          doctest::Approx(0.70 * 0.382352941176).epsilon(1e-10));
}

TEST_CASE("grating validation")
{
    GratingSpec g = default_grating();
    g.anchors = {{500e-9, 1.5}, {750e-9, 0.7}};
    CHECK_THROWS_AS(g.validate(), DomainError);
    CHECK(efficiency_mode_from_string("ideal") == EfficiencyMode::ideal);
    CHECK_THROWS_AS(efficiency_mode_from_string("exact"), DomainError);
}
