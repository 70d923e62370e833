#pragma once

#include <complex>
#include <utility>

#include "lfpdc/atom.hpp"
#include "lfpdc/media.hpp"
#include "lfpdc/specfun.hpp"
#include "lfpdc/tensor.hpp"
#include "lfpdc/units.hpp"

namespace lfpdc
{

struct CavityConfig
{
    double radius = 1e-3;
    PermittivityModel host;
    Vec3 position = Vec3::Zero();

    void validate() const;
    // R_c w / c < 0.1
    bool coarse_grained(double w, const UnitSystem& u) const;
};

namespace mie
{

// The Mie quotients are written with the standard outgoing Hankel function,
// which is the negative of sph_h1. Only C depends on that sign.
template <class C>
struct Parts
{
    C j0, jb0, h0, hb0, h, hb;
};

template <class C>
Parts<C> parts(const C& eps, const C& z0)
{
    using std::sqrt;
    const C z = sqrt(eps) * z0;
    return {sph_j1_t(z0), bracket_deriv_j1_t(z0), -sph_h1_t(z0), -bracket_deriv_h1_t(z0), -sph_h1_t(z),
            -bracket_deriv_h1_t(z)};
}

template <class C>
C c_exact(const C& eps, const C& z0)
{
    using std::abs;
    const auto p = parts(eps, z0);
    const C num = p.h0 * p.hb - eps * p.h * p.hb0;
    const C den = eps * p.h * p.jb0 - p.j0 * p.hb;
    if (abs(den) < 1e-300)
        throw DomainError("mie_C_exact: vanishing denominator");
    return num / den;
}

template <class C>
C d_exact(const C& eps, const C& z0)
{
    using std::abs;
    const auto p = parts(eps, z0);
    const C num = p.j0 * p.hb0 - p.h0 * p.jb0;
    const C den = p.j0 * p.hb - eps * p.h * p.jb0;
    if (abs(den) < 1e-300)
        throw DomainError("mie_D_exact: vanishing denominator");
    return num / den;
}

template <class C>
C c_expansion(const C& eps, const C& z0)
{
    using std::sqrt;
    const C one(1), two(2), i(0, 1);
    const C q = two * eps + one;
    const C t3 = C(3) * (eps - one) / q / (i * z0 * z0 * z0);
    const C t1 = C(9) / C(5) * (eps - one) * (C(4) * eps + one) / (q * q) / (i * z0);
    const C t0 = C(9) * eps * (eps * sqrt(eps)) / (q * q) - one;
    return t3 + t1 + t0;
}

}  // namespace mie

cplx mie_C_exact(cplx eps, cplx z0);
cplx mie_C_expansion(cplx eps, cplx z0);
cplx mie_D_exact(cplx eps, cplx z0);

// Leading term 3(eps-1)/(2eps+1)/(i z0^3) only.
cplx mie_C_leading(cplx eps, cplx z0);

// |C_exact - C_expansion| and |D_exact - dtilde|, both evaluated in quad precision.
double mie_C_remainder(cplx eps, cplx z0);
double mie_D_remainder(cplx eps, cplx z0);

cplx dtilde(cplx eps);
cplx ctilde(cplx eps);

// L[eps] = (2 / (9 eps0)) (eps - 1) / eps
cplx noise_lfc_factor(cplx eps, const UnitSystem& u);

struct OnsagerFactors
{
    cplx e_factor;
    cplx p_factor;
};

OnsagerFactors onsager_factors(cplx eps, const UnitSystem& u);

// D~*(w) D~*(w') D~(w + w') chi2(w, w')
Tensor3 chi2_lfc(const AtomModel& atom, const PermittivityModel& host, double w, double wp,
                 const UnitSystem& u);

}  // namespace lfpdc
