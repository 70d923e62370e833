#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lfpdc
{

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        if (!(x[k] > 0.0) || !(y[k] > 0.0))
            throw std::invalid_argument("loglog_slope: values must be positive");
        double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lfpdc
