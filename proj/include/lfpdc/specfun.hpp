#pragma once

// Order-1 spherical Bessel and Hankel functions of complex argument.
//
// Everything is templated on the complex type so the Mie remainders can be
// evaluated in quad precision (boost::multiprecision::cpp_complex_quad).
// The double overloads are what the rest of the library uses.

#include <complex>

#include "lfpdc/errors.hpp"

namespace lfpdc
{

using cplx = std::complex<double>;

namespace detail
{

inline constexpr double series_switch = 1e-2;
inline constexpr int series_terms = 8;

// Shared series: z * sum_k (-z^2/2)^k / (k! (2k+3)!!) * weight(k)
// weight(k) = 1 gives j1, weight(k) = 2k+2 gives [z j1]' (after dividing by z).
template <class C>
C j1_series(const C& z, bool bracket)
{
    C z2 = z * z;
    C term = C(1);
    C sum = C(0);
    double dfact = 3.0;  // (2k+3)!!
    double fact = 1.0;   // k!
    for (int k = 0; k < series_terms; ++k)
    {
        if (k > 0)
        {
            fact *= k;
            dfact *= 2 * k + 3;
            term *= -z2 / C(2);
        }
        C t = term / C(fact * dfact);
        if (bracket)
            t *= C(2.0 * k + 2.0);
        sum += t;
    }
    return z * sum;
}

template <class C>
bool is_zero(const C& z)
{
    using std::abs;
    return abs(z) == 0;
}

}  // namespace detail

template <class C>
C sph_j1_t(const C& z)
{
    using std::abs;
    using std::cos;
    using std::sin;
    if (abs(z) < detail::series_switch)
        return detail::j1_series(z, false);
    return sin(z) / (z * z) - cos(z) / z;
}

// h1(z) = (1/z + i/z^2) e^{iz}, the closed form as printed. Note this is
// the negative of the usual j1 + i y1; see mie.hpp for how it is used.
template <class C>
C sph_h1_t(const C& z)
{
    using std::exp;
    if (detail::is_zero(z))
        throw DomainError("sph_h1: pole at z = 0");
    const C i(0, 1);
    return (C(1) / z + i / (z * z)) * exp(i * z);
}

// d/dz [z j1(z)]
template <class C>
C bracket_deriv_j1_t(const C& z)
{
    using std::abs;
    using std::cos;
    using std::sin;
    if (abs(z) < detail::series_switch)
        return detail::j1_series(z, true);
    return cos(z) / z - sin(z) / (z * z) + sin(z);
}

// d/dz [z h1(z)] for the printed h1: z h1 = (1 + i/z) e^{iz}
template <class C>
C bracket_deriv_h1_t(const C& z)
{
    using std::exp;
    if (detail::is_zero(z))
        throw DomainError("bracket_deriv_h1: pole at z = 0");
    const C i(0, 1);
    return exp(i * z) * (i - C(1) / z - i / (z * z));
}

inline cplx sph_j1(cplx z) { return sph_j1_t(z); }
inline cplx sph_h1(cplx z) { return sph_h1_t(z); }
inline cplx bracket_deriv_j1(cplx z) { return bracket_deriv_j1_t(z); }
inline cplx bracket_deriv_h1(cplx z) { return bracket_deriv_h1_t(z); }

}  // namespace lfpdc
