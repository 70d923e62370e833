#include "lfpdc/media.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lfpdc/errors.hpp"

namespace lfpdc
{

PermittivityModel::PermittivityModel(std::vector<Resonance> resonances)
    : resonances_(std::move(resonances))
{
    for (std::size_t n = 0; n < resonances_.size(); ++n)
    {
        const auto& r = resonances_[n];
        const std::string p = "media.resonances[" + std::to_string(n) + "]";
        if (!(r.wp >= 0.0) || !std::isfinite(r.wp))
            throw ValidationError(p + ".wp", "must be >= 0");
        if (!(r.wr > 0.0) || !std::isfinite(r.wr))
            throw ValidationError(p + ".wr", "must be > 0");
        if (!(r.gamma > 0.0) || !std::isfinite(r.gamma))
            throw ValidationError(p + ".gamma", "must be > 0");
    }
}

PermittivityModel PermittivityModel::single(double wp, double wr, double gamma)
{
    return PermittivityModel({Resonance{wp, wr, gamma}});
}

bool PermittivityModel::is_vacuum() const
{
    for (const auto& r : resonances_)
        if (r.wp != 0.0)
            return false;
    return true;
}

cplx permittivity(const PermittivityModel& model, double w)
{
    cplx eps = 1.0;
    for (const auto& r : model.resonances())
        eps += r.wp * r.wp / cplx(r.wr * r.wr - w * w, -r.gamma * w);
    return eps;
}

double noise_amplitude_from_im(double eps_im, const UnitSystem& u)
{
    if (eps_im < 0.0)
        throw DomainError("noise_amplitude: Im eps < 0 (model is not passive)");
    return std::sqrt(u.hbar * u.eps0 * eps_im / std::numbers::pi);
}

double noise_amplitude(const PermittivityModel& model, double w, const UnitSystem& u)
{
    if (!(w > 0.0))
        throw DomainError("noise_amplitude: frequency must be > 0");
    return noise_amplitude_from_im(permittivity(model, w).imag(), u);
}

}  // namespace lfpdc
