#pragma once

#include "lfpdc/media.hpp"
#include "lfpdc/tensor.hpp"
#include "lfpdc/units.hpp"

namespace lfpdc
{

struct GreenValue
{
    Mat3c tensor = Mat3c::Zero();
    Vec3 r_f = Vec3::Zero();
    Vec3 r_s = Vec3::Zero();
};

// Reflection part carried as a coefficient of delta(r_A - r) delta_ab, never sampled.
struct CavityGreen
{
    cplx delta_coefficient;
    cplx bulk_scale;
    GreenValue bulk;
};

// Dyadic Green tensor of an infinite homogeneous medium, k = sqrt(eps) w / c.
GreenValue green_homogeneous(const Vec3& r_f, const Vec3& r_s, double w, cplx eps, const UnitSystem& u);

// Finite-difference residual of curl curl G - k^2 G at r_probe, relative to |k^2 G|.
double helmholtz_residual(double w, cplx eps, const Vec3& r_s, const Vec3& r_probe, double h,
                          const UnitSystem& u);

CavityGreen green_cavity_corrected(const Vec3& r_a, const Vec3& r_f, double w, const PermittivityModel& host,
                                   const UnitSystem& u);

}  // namespace lfpdc
