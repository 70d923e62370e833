#include "lfpdc/green.hpp"

#include <cmath>
#include <numbers>

#include "lfpdc/errors.hpp"
#include "lfpdc/lfc.hpp"

namespace lfpdc
{

GreenValue green_homogeneous(const Vec3& r_f, const Vec3& r_s, double w, cplx eps, const UnitSystem& u)
{
    if (!(w > 0.0))
        throw DomainError("green_homogeneous: frequency must be > 0");
    const Vec3 d = r_f - r_s;
    const double rho = d.norm();
    if (rho == 0.0)
        throw DomainError("green_homogeneous: coincident field and source points");
    const cplx k = std::sqrt(eps) * w / u.c;
    const cplx kr = k * rho;
    const cplx iu(0.0, 1.0);
    const cplx pre = std::exp(iu * kr) / (4.0 * std::numbers::pi * rho);
    const cplx a = 1.0 + iu / kr - 1.0 / (kr * kr);
    const cplx b = 3.0 / (kr * kr) - 3.0 * iu / kr - 1.0;
    const Vec3 n = d / rho;
    GreenValue g;
    g.r_f = r_f;
    g.r_s = r_s;
    g.tensor = pre * (a * Mat3c::Identity() + b * (n * n.transpose()).cast<cplx>());
    return g;
}

double helmholtz_residual(double w, cplx eps, const Vec3& r_s, const Vec3& r_probe, double h,
                          const UnitSystem& u)
{
    const cplx k2 = eps * (w * w) / (u.c * u.c);
    auto G = [&](const Vec3& r) { return green_homogeneous(r, r_s, w, eps, u).tensor; };
    const Mat3c g0 = G(r_probe);
    const Vec3 e[3] = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};

    // hess[m][n] = d_m d_n G, all components at once
    Mat3c hess[3][3];
    for (int m = 0; m < 3; ++m)
    {
        hess[m][m] = (G(r_probe + h * e[m]) - 2.0 * g0 + G(r_probe - h * e[m])) / (h * h);
        for (int n = m + 1; n < 3; ++n)
        {
            hess[m][n] = (G(r_probe + h * e[m] + h * e[n]) - G(r_probe + h * e[m] - h * e[n]) -
                          G(r_probe - h * e[m] + h * e[n]) + G(r_probe - h * e[m] - h * e[n])) /
                         (4.0 * h * h);
            hess[n][m] = hess[m][n];
        }
    }

    // curl curl = grad div - laplacian, acting on the field index of each column
    Mat3c res = -k2 * g0;
    for (int mu = 0; mu < 3; ++mu)
        for (int lam = 0; lam < 3; ++lam)
        {
            cplx gd = 0.0, lap = 0.0;
            for (int nu = 0; nu < 3; ++nu)
            {
                gd += hess[mu][nu](nu, lam);
                lap += hess[nu][nu](mu, lam);
            }
            res(mu, lam) += gd - lap;
        }
    return res.norm() / (k2 * g0).norm();
}

CavityGreen green_cavity_corrected(const Vec3& r_a, const Vec3& r_f, double w, const PermittivityModel& host,
                                   const UnitSystem& u)
{
    if (!(w > 0.0))
        throw DomainError("green_cavity_corrected: frequency must be > 0");
    const cplx eps = permittivity(host, w);
    CavityGreen c;
    c.delta_coefficient = ctilde(eps) * (u.c * u.c) / (w * w);
    c.bulk_scale = dtilde(eps);
    c.bulk = green_homogeneous(r_a, r_f, w, eps, u);
    return c;
}

}  // namespace lfpdc
