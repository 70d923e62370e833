#pragma once

#include <complex>
#include <vector>

#include "lfpdc/units.hpp"

namespace lfpdc
{

using cplx = std::complex<double>;

struct Resonance
{
    double wp = 0.0;     // plasma frequency
    double wr = 1.0;     // resonance frequency
    double gamma = 0.1;  // damping
};

// Drude-Lorentz host: eps(w) = 1 + sum wp^2 / (wr^2 - w^2 - i gamma w).
class PermittivityModel
{
public:
    PermittivityModel() = default;
    explicit PermittivityModel(std::vector<Resonance> resonances);

    static PermittivityModel vacuum() { return {}; }
    static PermittivityModel single(double wp, double wr, double gamma);

    const std::vector<Resonance>& resonances() const { return resonances_; }
    bool is_vacuum() const;

private:
    std::vector<Resonance> resonances_;
};

cplx permittivity(const PermittivityModel& model, double w);

// sqrt(hbar eps0 Im eps(w) / pi)
double noise_amplitude(const PermittivityModel& model, double w, const UnitSystem& u);

// Same, from a bare imaginary part.
double noise_amplitude_from_im(double eps_im, const UnitSystem& u);

}  // namespace lfpdc
