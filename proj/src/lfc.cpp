#include "lfpdc/lfc.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

#include "lfpdc/errors.hpp"

namespace lfpdc
{

namespace
{

using quad = boost::multiprecision::cpp_complex_quad;

quad to_quad(cplx z) { return quad(z.real(), z.imag()); }

cplx to_double(const quad& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

void check_pole(cplx eps, const char* who)
{
    if (std::abs(2.0 * eps + 1.0) == 0.0)
        throw DomainError(std::string(who) + ": pole at eps = -1/2");
}

void check_z0(cplx z0, const char* who)
{
    if (z0 == 0.0)
        throw DomainError(std::string(who) + ": z0 must be nonzero");
}

}  // namespace

void CavityConfig::validate() const
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ValidationError("cavity.radius", "must be > 0");
}

bool CavityConfig::coarse_grained(double w, const UnitSystem& u) const
{
    return radius * std::abs(w) / u.c < 0.1;
}

cplx mie_C_exact(cplx eps, cplx z0)
{
    check_z0(z0, "mie_C_exact");
    return to_double(mie::c_exact(to_quad(eps), to_quad(z0)));
}

cplx mie_D_exact(cplx eps, cplx z0)
{
    check_z0(z0, "mie_D_exact");
    return to_double(mie::d_exact(to_quad(eps), to_quad(z0)));
}

cplx mie_C_expansion(cplx eps, cplx z0)
{
    check_z0(z0, "mie_C_expansion");
    check_pole(eps, "mie_C_expansion");
    if (std::abs(z0) >= 0.1)
        throw DomainError("mie_C_expansion: needs |z0| < 0.1");
    return mie::c_expansion(eps, z0);
}

cplx mie_C_leading(cplx eps, cplx z0)
{
    check_z0(z0, "mie_C_leading");
    check_pole(eps, "mie_C_leading");
    return 3.0 * (eps - 1.0) / (2.0 * eps + 1.0) / (cplx(0.0, 1.0) * z0 * z0 * z0);
}

double mie_C_remainder(cplx eps, cplx z0)
{
    check_z0(z0, "mie_C_remainder");
    check_pole(eps, "mie_C_remainder");
    const quad e = to_quad(eps), z = to_quad(z0);
    return static_cast<double>(abs(mie::c_exact(e, z) - mie::c_expansion(e, z)));
}

double mie_D_remainder(cplx eps, cplx z0)
{
    check_z0(z0, "mie_D_remainder");
    check_pole(eps, "mie_D_remainder");
    const quad e = to_quad(eps), z = to_quad(z0);
    const quad dt = quad(3) * e / (quad(2) * e + quad(1));
    return static_cast<double>(abs(mie::d_exact(e, z) - dt));
}

cplx dtilde(cplx eps)
{
    check_pole(eps, "dtilde");
    return 3.0 * eps / (2.0 * eps + 1.0);
}

cplx ctilde(cplx eps)
{
    check_pole(eps, "ctilde");
    return (2.0 / 3.0) * (eps - 1.0) / (2.0 * eps + 1.0);
}

cplx noise_lfc_factor(cplx eps, const UnitSystem& u)
{
    if (eps == 0.0)
        throw DomainError("noise_lfc_factor: pole at eps = 0");
    return 2.0 / (9.0 * u.eps0) * (eps - 1.0) / eps;
}

OnsagerFactors onsager_factors(cplx eps, const UnitSystem& u)
{
    check_pole(eps, "onsager_factors");
    return {3.0 * eps / (2.0 * eps + 1.0), 2.0 / (3.0 * u.eps0) * (eps - 1.0) / (2.0 * eps + 1.0)};
}

Tensor3 chi2_lfc(const AtomModel& atom, const PermittivityModel& host, double w, double wp,
                 const UnitSystem& u)
{
    const cplx f = std::conj(dtilde(permittivity(host, w))) * std::conj(dtilde(permittivity(host, wp))) *
                   dtilde(permittivity(host, w + wp));
    Tensor3 t = chi2(atom, w, wp, u);
    t *= f;
    return t;
}

}  // namespace lfpdc
