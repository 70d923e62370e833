// Acceptance gate. One line per criterion:
//   criterion N: PASS|FAIL  <details>  (<seconds> s)
// Usage: acceptance [--criterion N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfpdc/atom.hpp"
#include "lfpdc/effham.hpp"
#include "lfpdc/fit.hpp"
#include "lfpdc/green.hpp"
#include "lfpdc/kk.hpp"
#include "lfpdc/lfc.hpp"
#include "lfpdc/sampling.hpp"
#include "lfpdc/terms.hpp"

using namespace lfpdc;

namespace
{

struct Outcome
{
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... v)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

Outcome vacuum_degeneracy()
{
    const auto u = natural_units();
    double worst = 0.0;
    for (double z0 : {1e-3, 1e-2, 1e-1})
    {
        worst = std::max(worst, std::abs(mie_C_exact(1.0, z0)));
        worst = std::max(worst, std::abs(mie_D_exact(1.0, z0) - 1.0));
    }
    worst = std::max({worst, std::abs(ctilde(1.0)), std::abs(dtilde(1.0) - 1.0), std::abs(noise_lfc_factor(1.0, u))});
    return {worst <= 1e-12, fmt("max deviation %.3e (tol 1e-12)", worst)};
}

Outcome mie_order()
{
    std::vector<double> z;
    for (int k = 0; k <= 10; ++k)
        z.push_back(std::pow(10.0, -4.0 + 0.25 * k));
    bool pass = true;
    std::string d;
    for (cplx eps : {cplx(2.0, 0.0), cplx(2.25, 0.1), cplx(3.0, 0.2)})
    {
        std::vector<double> rc, rd;
        for (double x : z)
        {
            rc.push_back(mie_C_remainder(eps, x));
            rd.push_back(mie_D_remainder(eps, x));
        }
        const double sc = loglog_slope(z, rc), sd = loglog_slope(z, rd);
        const bool ok_c = std::abs(sc - 1.0) <= 0.3, ok_d = std::abs(sd - 1.0) <= 0.3;
        pass = pass && ok_c && ok_d;
        d += fmt("eps=%g%+gi C slope %.3f [%s] D slope %.3f [%s]; ", eps.real(), eps.imag(), sc, ok_c ? "ok" : "bad",
                 sd, ok_d ? "ok" : "bad");
    }
    return {pass, d + "(target 1.0 +/- 0.3)"};
}

Outcome linear_kk()
{
    const FrequencyGrid g(50.0, 20001);
    const auto m = PermittivityModel::single(1.0, 1.0, 0.1);
    const double r = linear_kk_residual([&](double w) { return permittivity(m, w) - 1.0; }, g);
    LinearKKOptions nc;
    nc.require_decay = false;
    const double c = linear_kk_residual([](double) { return cplx(1.0); }, g, nc);
    return {r <= 1e-3 && c >= 0.9, fmt("Drude-Lorentz residual %.3e (tol 1e-3), constant control %.3f (min 0.9)", r, c)};
}

Outcome t_identity()
{
    Rng rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n)
    {
        const TTermParams p{cplx(u(rng), u(rng)), 2 * u(rng), 0.05 + 0.5 * (u(rng) + 1), 2 * u(rng),
                            0.05 + 0.5 * (u(rng) + 1)};
        const double w = 2 * u(rng), wp = 2 * u(rng);
        const cplx t = t_term(p, w, wp);
        worst = std::max(worst, std::abs(t_term_residue_identity(p, w, wp) - t) / std::abs(t));
    }
    return {worst <= 1e-12, fmt("max relative gap %.3e over 100 draws (tol 1e-12)", worst)};
}

Outcome nonlinear_kk()
{
    const FrequencyGrid g(40.0, 4001);
    const TTermParams p{1.0, 1.0, 0.2, 1.5, 0.2};
    double wt = 0.0;
    for (auto [w, wp] : {std::pair{0.7, 0.5}, {1.0, 0.5}, {0.3, 0.9}})
        wt = std::max(wt, nonlinear_kk_residual([&](double x, double y) { return t_term(p, x, y); }, w, wp, g));

    Rng rng(42);
    const AtomModel a = random_atom(rng);
    const double w = 0.3, wp = 0.4;
    const Tensor3 x = chi2(a, w, wp, natural_units());
    int best = 0;
    for (int k = 1; k < 27; ++k)
        if (std::abs(x.flat()[k]) > std::abs(x.flat()[best]))
            best = k;
    const double wa = nonlinear_kk_residual(
        [&](double s, double t) { return chi2_component(a, best / 9, (best / 3) % 3, best % 3, s, t, natural_units()); },
        w, wp, g);
    return {wt <= 1e-2 && wa <= 2e-2,
            fmt("T-term max residual %.3e (tol 1e-2), 3-level chi2 residual %.3e (tol 2e-2)", wt, wa)};
}

Outcome oracle()
{
    Rng rng(42);
    const std::vector<std::pair<double, double>> pairs{{0.3, 0.4}, {0.5, 0.2}, {-0.3, 0.6}, {0.9, 0.7}, {1.1, -0.4}};
    double worst = 0.0;
    for (int n = 0; n < 3; ++n)
    {
        const AtomModel a = random_atom(rng);
        for (auto [w, wp] : pairs)
            worst = std::max(worst, relative_frobenius(chi2(a, w, wp, natural_units()),
                                                       chi2_from_oracle(a, w, wp, natural_units())));
    }
    return {worst <= 1e-3, fmt("max relative Frobenius error %.3e over 3 atoms x 5 pairs (tol 1e-3)", worst)};
}

Outcome two_route()
{
    Rng rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0), x(-2.0, 2.0);
    double worst = 0.0;
    for (int n = 0; n < 20; ++n)
    {
        const AtomModel a = random_atom(rng);
        const auto host = PermittivityModel::single(0.5 + u(rng), 0.8 + 0.6 * u(rng), 0.05 + 0.2 * u(rng));
        KTriple k;
        k.r_atom = Vec3(x(rng), x(rng), x(rng));
        k.s = k.r_atom + Vec3(1.0 + u(rng), x(rng), x(rng));
        k.s_prime = k.r_atom + Vec3(x(rng), 1.0 + u(rng), x(rng));
        k.r = k.r_atom + Vec3(x(rng), x(rng), 1.0 + u(rng));
        k.w = 0.2 + 0.6 * u(rng);
        k.wp = 0.2 + 0.6 * u(rng);
        const auto ctx = n % 2 ? GreenContext::bulk : GreenContext::local_field;
        worst = std::max(worst, relative_frobenius(k_tensor_factored(a, host, ctx, k, natural_units()),
                                                   k_tensor_sum(a, host, ctx, k, natural_units())));
    }
    return {worst <= 1e-10, fmt("max relative gap %.3e over 20 scenarios (tol 1e-10)", worst)};
}

Outcome replay_check()
{
    const auto s = terms::replay();
    const bool same = s == terms::reference_k_structure();
    std::ifstream in(GOLDEN_RWA, std::ios::binary);
    std::ostringstream g;
    g << in.rdbuf();
    const bool golden = in.good() || in.eof() ? g.str() == terms::format_structure(s) : false;
    return {s.size() == 4 && same && golden,
            fmt("%zu terms, structure %s, golden file %s", s.size(), same ? "matches" : "differs",
                golden ? "identical" : "differs")};
}

Outcome helmholtz()
{
    const auto u = natural_units();
    const Vec3 src(0.1, -0.2, 0.3);
    const std::vector<Vec3> probes{{3, 0, 0}, {1, 2, 1}, {-1.5, 0.7, 2}, {0.5, -2.5, 1}, {2, 2, -2}};
    double worst = 0.0, dev = 0.0;
    for (cplx eps : {cplx(1.0, 0.0), cplx(2.25, 0.1)})
    {
        const double k = std::abs(std::sqrt(eps));
        for (const auto& p : probes)
        {
            std::vector<double> h, r;
            for (double s : {4e-3, 2e-3, 1e-3})
            {
                h.push_back(s / k);
                r.push_back(helmholtz_residual(1.0, eps, src, src + p, h.back(), u));
            }
            worst = std::max(worst, r.back());
            dev = std::max(dev, std::abs(loglog_slope(h, r) - 2.0));
        }
    }
    return {worst <= 1e-3 && dev <= 0.3,
            fmt("max residual %.3e (tol 1e-3), max |slope - 2| %.3f (tol 0.3)", worst, dev)};
}

Outcome absorption_limit()
{
    Rng rng(42);
    const AtomModel a = random_atom(rng);
    const auto host = PermittivityModel::single(1.0, 1.0, 0.2);
    const auto r = vanishing_absorption_limit(a, host, 0.6, 0.5, {1e-1, 1e-2, 1e-3, 1e-4}, natural_units());
    bool pass = r.channel0_gap <= 1e-12;
    double worst_dev[4] = {0, 0, 0, 0}, zero = 0.0;
    for (int m = 1; m < 8; ++m)
    {
        const int n = ChannelWeights::noise_legs(m);
        worst_dev[n] = std::max(worst_dev[n], std::abs(r.exponents[m] - 0.5 * n));
        zero = std::max(zero, r.at_zero[m]);
    }
    pass = pass && worst_dev[1] <= 0.05 && worst_dev[2] <= 0.1 && worst_dev[3] <= 0.1 && zero == 0.0;
    return {pass, fmt("exponent deviations n=1 %.2e (tol 0.05), n=2 %.2e, n=3 %.2e (tol 0.1); noise at t=0 %g; "
                      "channel 000 gap %.2e",
                      worst_dev[1], worst_dev[2], worst_dev[3], zero, r.channel0_gap)};
}

Outcome hermiticity()
{
    Rng rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0), x(-2.0, 2.0);
    const auto host = PermittivityModel::single(1.0, 1.0, 0.15);
    double worst = 0.0;
    int built = 0;
    for (int n = 0; n < 20; ++n)
    {
        const AtomModel a = random_atom(rng);
        const double w1 = 0.2 + 0.3 * u(rng), w2 = w1 + 0.05 + 0.3 * u(rng);
        std::vector<Mode> modes{{w1, Vec3(x(rng), x(rng), 2.0), int(3 * u(rng))},
                                {w2, Vec3(2.0, x(rng), x(rng)), int(3 * u(rng))},
                                {w1 + w2, Vec3(x(rng), 2.0, x(rng)), int(3 * u(rng))}};
        const ModeGrid g(modes);
        std::vector<ModeTriple> t;
        for (auto [i, j] : {std::pair{0, 1}, {1, 0}})
        {
            const Mode& mi = modes[std::size_t(i)];
            const Mode& mj = modes[std::size_t(j)];
            KTriple k{Vec3::Zero(), mi.position, mj.position, modes[2].position, mi.frequency, mj.frequency};
            const Tensor3 kt = k_tensor_sum(a, host, GreenContext::local_field, k, natural_units());
            t.push_back(make_triple(g, i, j, 2, kt(mi.polarization, mj.polarization, modes[2].polarization)));
        }
        for (int trunc : {2, 4, 6})
        {
            worst = std::max(worst, hermiticity_defect(hamiltonian_matrix(g, t, trunc, natural_units())));
            ++built;
        }
    }
    return {worst <= 1e-12, fmt("max ||H - H^+|| / ||H|| %.3e over %d matrices (tol 1e-12)", worst, built)};
}

Outcome onsager()
{
    Rng rng(42);
    const UnitSystem u(1.0, 1.7, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n)
    {
        const cplx e = random_eps(rng);
        const auto f = onsager_factors(e, u);
        worst = std::max(worst, std::abs(f.e_factor - dtilde(e)) / std::abs(dtilde(e)));
        worst = std::max(worst, std::abs(f.p_factor - ctilde(e) / u.eps0) / std::abs(ctilde(e) / u.eps0));
    }
    return {worst <= 1e-14, fmt("max relative gap %.3e over 100 eps (tol 1e-14)", worst)};
}

struct Criterion
{
    const char* name;
    std::function<Outcome()> fn;
};

const std::vector<Criterion> criteria{
    {"vacuum degeneracy", vacuum_degeneracy},
    {"Mie expansion order", mie_order},
    {"linear Kramers-Kronig", linear_kk},
    {"T-term residue identity", t_identity},
    {"nonlinear Kramers-Kronig", nonlinear_kk},
    {"chi2 oracle equivalence", oracle},
    {"two-route coupling tensor", two_route},
    {"derivation replay", replay_check},
    {"Helmholtz residual", helmholtz},
    {"vanishing absorption", absorption_limit},
    {"Hamiltonian Hermiticity", hermiticity},
    {"Onsager equivalence", onsager},
};

bool run_one(std::size_t n)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
        o = criteria[n - 1].fn();
    }
    catch (const std::exception& e)
    {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s  %s: %s  (%.2f s)\n", n, o.pass ? "PASS" : "FAIL", criteria[n - 1].name,
                o.detail.c_str(), dt);
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::size_t> which;
    for (int k = 1; k < argc; ++k)
    {
        if (std::strcmp(argv[k], "--criterion") == 0 && k + 1 < argc)
        {
            const long n = std::strtol(argv[++k], nullptr, 10);
            if (n < 1 || n > long(criteria.size()))
            {
                std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
                return 2;
            }
            which.push_back(std::size_t(n));
        }
        else
        {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (which.empty())
        for (std::size_t n = 1; n <= criteria.size(); ++n)
            which.push_back(n);
    bool all = true;
    for (auto n : which)
        all = run_one(n) && all;
    return all ? 0 : 1;
}
