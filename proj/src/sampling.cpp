#include "lfpdc/sampling.hpp"

namespace lfpdc
{

AtomModel random_atom(Rng& rng, int n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    AtomModel::Data d;
    d.bare_freqs.resize(std::size_t(n));
    for (int i = 1; i < n; ++i)
        d.bare_freqs[std::size_t(i)] = d.bare_freqs[std::size_t(i - 1)] + 0.8 + 0.5 * u(rng);
    d.shifts = Eigen::MatrixXd::Zero(n, n);
    d.widths = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
        {
            const double g = 0.2 + 0.2 * u(rng);
            d.widths(i, j) = d.widths(j, i) = g;
            const double s = 0.1 * u(rng) - 0.05;
            d.shifts(i, j) = s;
            d.shifts(j, i) = -s;
        }
    for (int a = 0; a < 3; ++a)
    {
        d.dipoles[a] = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
            {
                const cplx v(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
                d.dipoles[a](i, j) = v;
                d.dipoles[a](j, i) = std::conj(v);
            }
    }
    double total = 0.0;
    d.populations.resize(std::size_t(n));
    for (auto& p : d.populations)
        total += (p = u(rng));
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i)
        acc += (d.populations[std::size_t(i)] /= total);
    d.populations.back() = 1.0 - acc;
    return AtomModel(std::move(d));
}

std::complex<double> random_eps(Rng& rng)
{
    std::uniform_real_distribution<double> re(1.1, 4.0), im(0.0, 0.5);
    const double r = re(rng);
    return {r, im(rng)};
}

}  // namespace lfpdc
