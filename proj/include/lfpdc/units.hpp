#pragma once

#include <stdexcept>

namespace lfpdc
{

/// Physical constants in the unit system used for a computation.
///
/// All library routines take the constants explicitly, so a result can be
/// checked for dimensional consistency by rerunning it in a rescaled system.
/// Frequencies are always angular frequencies.
struct UnitSystem
{
    double hbar = 1.0;
    double eps0 = 1.0;
    double c = 1.0;

    constexpr UnitSystem() = default;
    constexpr UnitSystem(double hbar_, double eps0_, double c_)
        : hbar(hbar_), eps0(eps0_), c(c_)
    {
        if (!(hbar > 0.0) || !(eps0 > 0.0) || !(c > 0.0))
            throw std::invalid_argument("UnitSystem: constants must be strictly positive");
    }

    friend constexpr bool operator==(const UnitSystem&, const UnitSystem&) = default;
};

constexpr UnitSystem natural_units() { return UnitSystem{}; }

/// SI values, for converting CLI input and output only.
constexpr UnitSystem si_units() { return UnitSystem{1.054571817e-34, 8.8541878128e-12, 299792458.0}; }

}  // namespace lfpdc
