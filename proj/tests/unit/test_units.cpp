#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lfpdc/lfc.hpp"
#include "lfpdc/media.hpp"
#include "lfpdc/units.hpp"

using namespace lfpdc;

TEST_CASE("natural units are all ones")
{
    constexpr auto u = natural_units();
    STATIC_REQUIRE(u.hbar == 1.0);
    STATIC_REQUIRE(u.eps0 == 1.0);
    STATIC_REQUIRE(u.c == 1.0);
}

TEST_CASE("non-positive constants are rejected")
{
    REQUIRE_THROWS_AS(UnitSystem(0.0, 1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(UnitSystem(1.0, -1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(UnitSystem(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("noise prefactor in natural units is sqrt(1/pi)")
{
    REQUIRE(noise_amplitude_from_im(1.0, natural_units()) == Catch::Approx(std::sqrt(1.0 / std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("L[1] vanishes in any unit system")
{
    for (const auto& u : {natural_units(), si_units(), UnitSystem(2.0, 0.3, 7.0)})
        REQUIRE(noise_lfc_factor(1.0, u) == cplx(0.0));
}
