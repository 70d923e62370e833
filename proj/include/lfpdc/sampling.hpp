#pragma once

#include <complex>
#include <random>

#include "lfpdc/atom.hpp"

namespace lfpdc
{

using Rng = std::mt19937_64;

// Random N-level atom: ladder-like bare frequencies, widths in [0.2, 0.4],
// small antisymmetric shifts, off-diagonal complex dipoles and random populations.
AtomModel random_atom(Rng& rng, int n_levels = 3);

// Random host permittivity with Re in [1.1, 4] and Im in [0, 0.5].
std::complex<double> random_eps(Rng& rng);

}  // namespace lfpdc
