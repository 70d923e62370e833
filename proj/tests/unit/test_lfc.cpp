#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lfpdc/errors.hpp"
#include "lfpdc/fit.hpp"
#include "lfpdc/lfc.hpp"
#include "lfpdc/sampling.hpp"

#include "helpers.hpp"

using namespace lfpdc;
using testing::rel;

TEST_CASE("vacuum cavity is transparent")
{
    for (double z0 : {1e-3, 1e-2, 1e-1})
    {
        REQUIRE(std::abs(mie_C_exact(1.0, z0)) <= 1e-12);
        REQUIRE(std::abs(mie_D_exact(1.0, z0) - 1.0) <= 1e-12);
    }
    REQUIRE(mie_C_expansion(1.0, 0.05) == cplx(0.0));
    REQUIRE(dtilde(1.0) == cplx(1.0));
    REQUIRE(ctilde(1.0) == cplx(0.0));
}

TEST_CASE("exact Mie quotients against extended precision")
{
    // standard outgoing h1, 40-digit evaluation
    REQUIRE(rel(mie_C_exact({2.25, 0.1}, 0.05), cplx(239.65010932925442635, -5477.9107834806725228)) < 1e-10);
    REQUIRE(rel(mie_D_exact({2.25, 0.1}, 0.05), cplx(1.2260091801879024415, 0.0096725026199571253162)) < 1e-12);
    REQUIRE(rel(mie_C_exact({3.0, 0.2}, 0.01), cplx(36621.496164270747754, -859330.71779911245698)) < 1e-9);
    REQUIRE(rel(mie_D_exact({3.0, 0.2}, 0.01), cplx(1.2862981423976824758, 0.012190465118083068964)) < 1e-12);
}

TEST_CASE("leading term of C")
{
    const cplx eps(2.25, 0.1);
    REQUIRE(rel(mie_C_leading(eps, 1e-3), mie_C_exact(eps, 1e-3)) < 1e-2);
    REQUIRE(rel(mie_C_leading({3.0, 0.2}, 1e-4), mie_C_exact({3.0, 0.2}, 1e-4)) < 1e-6);
    REQUIRE_THROWS_AS(mie_C_expansion(eps, 0.2), DomainError);
}

TEST_CASE("C symmetry for real eps and real z0")
{
    for (double z0 : {0.01, 0.05, 0.3})
        REQUIRE(rel(std::conj(mie_C_exact(2.0, z0)), mie_C_exact(2.0, -z0)) < 1e-10);
}

TEST_CASE("C remainder after the expansion is first order in z0")
{
    std::vector<double> z, r;
    for (int k = 0; k <= 10; ++k)
    {
        z.push_back(std::pow(10.0, -4.0 + 0.25 * k));
        r.push_back(mie_C_remainder(2.0, z.back()));
    }
    REQUIRE(loglog_slope(z, r) == Catch::Approx(1.0).margin(0.3));
}

TEST_CASE("D approaches D~ as z0 -> 0")
{
    const cplx eps(2.25, 0.1);
    REQUIRE(dtilde(2.0) == cplx(1.2));
    REQUIRE(mie_D_remainder(eps, 1e-3) <= 1.0 * 1e-3);
    REQUIRE(mie_D_remainder(eps, 1e-2) > mie_D_remainder(eps, 1e-3));
}

TEST_CASE("C~ and L")
{
    REQUIRE(rel(ctilde({2.0, 1.0}), (2.0 / 3.0) * cplx(1.0, 1.0) / cplx(5.0, 2.0)) < 1e-15);
    REQUIRE(rel(ctilde(1e12), 1.0 / 3.0) < 1e-11);
    REQUIRE(rel(noise_lfc_factor(2.0, natural_units()), 1.0 / 9.0) < 1e-15);
    REQUIRE(rel(noise_lfc_factor(1e12, natural_units()), 2.0 / 9.0) < 1e-11);
    REQUIRE(rel(noise_lfc_factor(1e12, UnitSystem(1.0, 4.0, 1.0)), 2.0 / 36.0) < 1e-11);
    REQUIRE_THROWS_AS(dtilde(-0.5), DomainError);
}

TEST_CASE("Onsager factors")
{
    REQUIRE(onsager_factors(1.0, natural_units()).e_factor == cplx(1.0));
    REQUIRE(onsager_factors(1.0, natural_units()).p_factor == cplx(0.0));
    Rng rng(42);
    const UnitSystem u(1.0, 2.5, 1.0);
    for (int n = 0; n < 100; ++n)
    {
        const cplx e = random_eps(rng);
        const auto f = onsager_factors(e, u);
        REQUIRE(std::abs(f.e_factor - dtilde(e)) <= 1e-14 * std::abs(dtilde(e)));
        REQUIRE(std::abs(f.p_factor - ctilde(e) / u.eps0) <= 1e-14 * std::abs(ctilde(e) / u.eps0));
    }
}

TEST_CASE("local-field corrected chi2")
{
    Rng rng(42);
    const AtomModel a = random_atom(rng);
    const auto u = natural_units();
    REQUIRE(relative_frobenius(chi2_lfc(a, PermittivityModel::vacuum(), 0.3, 0.4, u), chi2(a, 0.3, 0.4, u)) == 0.0);
    REQUIRE(chi2_lfc(testing::parity_atom(), PermittivityModel::single(1, 1, 0.1), 0.3, 0.4, u).max_abs() == 0.0);

    const auto host = PermittivityModel::single(1.0, 1.0, 0.1);
    Tensor3 ref = chi2(a, 0.3, 0.4, u);
    ref *= std::conj(dtilde(permittivity(host, 0.3))) * std::conj(dtilde(permittivity(host, 0.4))) *
           dtilde(permittivity(host, 0.7));
    REQUIRE(relative_frobenius(chi2_lfc(a, host, 0.3, 0.4, u), ref) < 1e-14);
}

TEST_CASE("cavity configuration")
{
    CavityConfig c;
    c.radius = 0.01;
    REQUIRE(c.coarse_grained(1.0, natural_units()));
    REQUIRE_FALSE(c.coarse_grained(20.0, natural_units()));
    c.radius = -1.0;
    try
    {
        c.validate();
        FAIL("expected a validation error");
    }
    catch (const ValidationError& e)
    {
        REQUIRE(e.path() == "cavity.radius");
    }
}
