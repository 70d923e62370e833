#include <catch_amalgamated.hpp>

#include <numbers>

#include "lfpdc/errors.hpp"
#include "lfpdc/media.hpp"

using namespace lfpdc;

TEST_CASE("vacuum has eps = 1 everywhere")
{
    const auto m = PermittivityModel::vacuum();
    for (double w : {0.0, 0.3, 1.0, 40.0})
        REQUIRE(permittivity(m, w) == cplx(1.0));
    REQUIRE(noise_amplitude(m, 0.7, natural_units()) == 0.0);
}

TEST_CASE("static limit and resonance")
{
    const PermittivityModel m({{1.0, 2.0, 0.1}, {0.5, 3.0, 0.2}});
    const cplx e0 = permittivity(m, 0.0);
    REQUIRE(e0.imag() == 0.0);
    REQUIRE(e0.real() == Catch::Approx(1.0 + 0.25 + 0.25 / 9.0).epsilon(1e-15));

    const cplx e = permittivity(PermittivityModel::single(1.0, 2.0, 0.1), 2.0);
    REQUIRE(std::abs(e - cplx(1.0, 5.0)) < 1e-14);
}

TEST_CASE("noise amplitude")
{
    const auto u = natural_units();
    REQUIRE(noise_amplitude_from_im(std::numbers::pi, u) == Catch::Approx(1.0).epsilon(1e-15));
    // at w = wr, Im eps = wp^2 / (gamma wr); extended-precision value
    const auto m = PermittivityModel::single(1.3, 0.8, 0.07);
    REQUIRE(noise_amplitude(m, 0.8, u) == Catch::Approx(3.0993769755578246665).epsilon(1e-14));
    REQUIRE_THROWS_AS(noise_amplitude(m, 0.0, u), DomainError);
    REQUIRE_THROWS(noise_amplitude_from_im(-0.1, u));
}

TEST_CASE("reality condition eps(-w) = conj eps(w)")
{
    const PermittivityModel m({{1.0, 1.0, 0.1}, {0.7, 2.5, 0.3}});
    for (double w : {0.2, 1.0, 3.7})
        REQUIRE(std::abs(permittivity(m, -w) - std::conj(permittivity(m, w))) < 1e-14);
}

TEST_CASE("resonance validation names the field")
{
    try
    {
        PermittivityModel({{1.0, 1.0, 0.1}, {1.0, 1.0, -0.2}});
        FAIL("expected a validation error");
    }
    catch (const ValidationError& e)
    {
        REQUIRE(e.path() == "media.resonances[1].gamma");
    }
}
