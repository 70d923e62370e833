#include <catch_amalgamated.hpp>

#include <random>

#include "lfpdc/effham.hpp"
#include "lfpdc/errors.hpp"
#include "lfpdc/lfc.hpp"
#include "lfpdc/sampling.hpp"

#include "helpers.hpp"

using namespace lfpdc;

namespace
{

KTriple random_triple(Rng& rng)
{
    std::uniform_real_distribution<double> f(0.2, 0.8), x(-2.0, 2.0);
    KTriple k;
    k.s = Vec3(x(rng), x(rng), x(rng)) + Vec3(0.5, 0, 0);
    k.s_prime = Vec3(x(rng), x(rng), x(rng)) + Vec3(0, 0.5, 0);
    k.r = Vec3(x(rng), x(rng), x(rng)) + Vec3(0, 0, 0.5);
    k.w = f(rng);
    k.wp = f(rng);
    return k;
}

}  // namespace

TEST_CASE("two routes to the coupling tensor")
{
    Rng rng(42);
    const auto u = natural_units();
    const auto structure = terms::replay();
    for (int n = 0; n < 10; ++n)
    {
        const AtomModel a = random_atom(rng);
        const auto host = PermittivityModel::single(0.8 + 0.4 * std::uniform_real_distribution<double>()(rng), 1.0, 0.15);
        const KTriple k = random_triple(rng);
        for (auto ctx : {GreenContext::bulk, GreenContext::local_field})
        {
            const Tensor3 s = k_tensor_sum(a, host, ctx, k, u);
            REQUIRE(s.max_abs() > 0.0);
            REQUIRE(relative_frobenius(k_tensor_factored(a, host, ctx, k, u), s) <= 1e-10);
            REQUIRE(relative_frobenius(k_tensor_from_structure(structure, a, leg_greens(host, ctx, k, u), k, u), s) <= 1e-10);
        }
    }
}

TEST_CASE("coupling tensor vanishes without absorption or without chi2")
{
    Rng rng(1);
    const auto u = natural_units();
    const AtomModel a = random_atom(rng);
    const KTriple k = random_triple(rng);
    REQUIRE(k_tensor_sum(a, PermittivityModel::vacuum(), GreenContext::bulk, k, u).max_abs() == 0.0);
    REQUIRE(k_tensor_factored(a, PermittivityModel::vacuum(), GreenContext::bulk, k, u).max_abs() == 0.0);
    const auto host = PermittivityModel::single(1.0, 1.0, 0.1);
    REQUIRE(k_tensor_sum(testing::parity_atom(), host, GreenContext::bulk, k, u).max_abs() == 0.0);
    REQUIRE(k_tensor_factored(testing::parity_atom(), host, GreenContext::bulk, k, u).max_abs() == 0.0);
}

TEST_CASE("coupling tensor scales as the cube of the dipoles")
{
    Rng rng(2);
    const auto u = natural_units();
    const AtomModel a = random_atom(rng);
    const KTriple k = random_triple(rng);
    const auto host = PermittivityModel::single(1.0, 1.0, 0.1);
    Tensor3 x = k_tensor_factored(a.scaled_dipoles(2.0), host, GreenContext::local_field, k, u);
    x *= 1.0 / 8.0;
    REQUIRE(relative_frobenius(x, k_tensor_factored(a, host, GreenContext::local_field, k, u)) < 1e-14);
}

TEST_CASE("channel weights")
{
    Rng rng(3);
    const auto u = natural_units();
    const AtomModel a = random_atom(rng);

    const auto vac = channel_decompose(a, PermittivityModel::vacuum(), 0.3, 0.4, u);
    Tensor3 base = chi2(a, 0.3, 0.4, u);
    base *= cplx(u.eps0);
    REQUIRE(relative_frobenius(vac.weight[0], base) == 0.0);
    for (int m = 1; m < 8; ++m)
        REQUIRE(vac.weight[m].max_abs() == 0.0);

    // eps = 2 on every leg: L = 1/9, D~ = 6/5
    const LegPermittivities two{2.0, 2.0, 2.0};
    const auto cw = channel_decompose(a, two, 0.3, 0.4, u);
    Tensor3 expect = cw.weight[0];
    expect *= 1.0 / 9.0;
    REQUIRE(relative_frobenius(cw.weight[4], expect) < 1e-15);
    REQUIRE(ChannelWeights::noise_legs(4) == 1);
    REQUIRE(ChannelWeights::noise_legs(7) == 3);
}

TEST_CASE("vanishing absorption")
{
    Rng rng(4);
    const auto u = natural_units();
    const AtomModel a = random_atom(rng);
    const auto host = PermittivityModel::single(1.0, 1.0, 0.2);
    const auto r = vanishing_absorption_limit(a, host, 0.6, 0.5, {1e-1, 1e-2, 1e-3, 1e-4}, u);
    for (int m = 1; m < 8; ++m)
    {
        const int n = ChannelWeights::noise_legs(m);
        REQUIRE(r.exponents[m] == Catch::Approx(0.5 * n).margin(n == 1 ? 0.05 : 0.1));
        REQUIRE(r.at_zero[m] == 0.0);
    }
    REQUIRE(r.channel0_gap <= 1e-14);
    REQUIRE_THROWS_AS(vanishing_absorption_limit(a, host, 0.6, 0.5, {0.0}, u), DomainError);
}

TEST_CASE("mode grid and triples")
{
    REQUIRE_THROWS_AS(ModeGrid({{0.5}, {-1.0}}), ValidationError);
    REQUIRE_THROWS_AS(ModeGrid({{1.0}, {0.5}}), ValidationError);
    const ModeGrid g({{0.4}, {0.6}, {1.0}});
    REQUIRE_NOTHROW(make_triple(g, 0, 1, 2, 1.0));
    REQUIRE_THROWS_AS(make_triple(g, 0, 0, 2, 1.0), DomainError);
    REQUIRE_THROWS_AS(make_triple(g, 0, 1, 3, 1.0), DomainError);
    REQUIRE(fock_dimension(3, 2) == 10);
    REQUIRE(fock_basis(3, 2).size() == 10);
}

TEST_CASE("single-triple Hamiltonian block")
{
    const ModeGrid g({{0.4}, {0.6}, {1.0}});
    const cplx k(0.3, -0.7);
    const UnitSystem u(2.0, 1.0, 1.0);
    const auto h = hamiltonian_matrix(g, {make_triple(g, 0, 1, 2, k)}, 2, u);
    const auto basis = fock_basis(3, 2);
    auto index = [&](std::vector<int> s) {
        return int(std::find(basis.begin(), basis.end(), s) - basis.begin());
    };
    const int pump = index({0, 0, 1}), pair = index({1, 1, 0});
    const Eigen::MatrixXcd d(h);
    REQUIRE(std::abs(d(pair, pump) - (-u.hbar * k)) < 1e-15);
    REQUIRE(std::abs(d(pump, pair) - std::conj(-u.hbar * k)) < 1e-15);
    REQUIRE(h.nonZeros() == 2);

    REQUIRE(hamiltonian_matrix(g, {make_triple(g, 0, 1, 2, 0.0)}, 2, u).norm() == 0.0);
    REQUIRE_THROWS_AS(hamiltonian_matrix(g, {}, 1, u), DomainError);
}

TEST_CASE("assembled Hamiltonians are Hermitian")
{
    Rng rng(42);
    std::uniform_real_distribution<double> x(-1.0, 1.0);
    for (int n = 0; n < 20; ++n)
    {
        const double a = 0.3 + 0.2 * (x(rng) + 1.0), b = 0.3 + 0.2 * (x(rng) + 1.0);
        std::vector<Mode> modes{{std::min(a, b)}, {std::max(a, b)}, {a + b}};
        const ModeGrid g(modes);
        std::vector<ModeTriple> t{make_triple(g, 0, 1, 2, {x(rng), x(rng)}), make_triple(g, 1, 0, 2, {x(rng), x(rng)})};
        if (a == b)
            continue;
        const auto h = hamiltonian_matrix(g, t, 4, natural_units());
        REQUIRE(hermiticity_defect(h) <= 1e-12);
    }
}
