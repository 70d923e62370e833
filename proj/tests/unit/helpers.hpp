#pragma once

#include <complex>

#include "lfpdc/atom.hpp"
#include "lfpdc/sampling.hpp"

namespace testing
{

inline double rel(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) / std::abs(b);
}

// Two-level atom with only off-diagonal dipoles.
inline lfpdc::AtomModel parity_atom()
{
    lfpdc::AtomModel::Data d;
    d.bare_freqs = {0.0, 1.0};
    d.shifts = Eigen::MatrixXd::Zero(2, 2);
    d.widths = Eigen::MatrixXd::Constant(2, 2, 0.1);
    for (auto& m : d.dipoles)
        m = Eigen::MatrixXcd::Zero(2, 2);
    d.dipoles[0](0, 1) = d.dipoles[0](1, 0) = 1.0;
    d.dipoles[2](0, 1) = {0.3, 0.2};
    d.dipoles[2](1, 0) = {0.3, -0.2};
    d.populations = {1.0, 0.0};
    return lfpdc::AtomModel(d);
}

}  // namespace testing
