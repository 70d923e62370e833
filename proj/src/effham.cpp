#include "lfpdc/effham.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "lfpdc/errors.hpp"
#include "lfpdc/fit.hpp"
#include "lfpdc/green.hpp"
#include "lfpdc/lfc.hpp"

namespace lfpdc
{

namespace
{

Mat3c leg_green(const PermittivityModel& host, GreenContext ctx, const Vec3& r_atom, const Vec3& r, double w,
                const UnitSystem& u)
{
    const cplx eps = permittivity(host, w);
    Mat3c g = green_homogeneous(r_atom, r, w, eps, u).tensor;
    if (ctx == GreenContext::local_field)
        g *= dtilde(eps);
    return g;
}

// g[i * n + j] for one leg
std::vector<Vec3c> couplings(const AtomModel& atom, const Mat3c& g, double eps_im, double w, const UnitSystem& u)
{
    const int n = atom.n_levels();
    std::vector<Vec3c> out(std::size_t(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[std::size_t(i * n + j)] = coupling_g(atom, i, j, g, eps_im, w, u);
    return out;
}

void accumulate(Tensor3& out, cplx pre, const Vec3c& a, const Vec3c& b, const Vec3c& c)
{
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m)
        {
            cplx lm = pre * a(l) * b(m);
            for (int v = 0; v < 3; ++v)
                out(l, m, v) += lm * c(v);
        }
}

cplx checked_inverse(cplx d1, cplx d2)
{
    if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
        throw DomainError("k_tensor: near-singular energy denominator");
    return 1.0 / (d1 * d2);
}

}  // namespace

LegGreens leg_greens(const PermittivityModel& host, GreenContext ctx, const KTriple& k, const UnitSystem& u)
{
    const double wpp = k.w + k.wp;
    return {leg_green(host, ctx, k.r_atom, k.s, k.w, u),
            leg_green(host, ctx, k.r_atom, k.s_prime, k.wp, u),
            leg_green(host, ctx, k.r_atom, k.r, wpp, u),
            permittivity(host, k.w).imag(),
            permittivity(host, k.wp).imag(),
            permittivity(host, wpp).imag()};
}

Tensor3 k_tensor_sum(const AtomModel& atom, const PermittivityModel& host, GreenContext ctx, const KTriple& k,
                     const UnitSystem& u)
{
    const LegGreens lg = leg_greens(host, ctx, k, u);
    const double wpp = k.w + k.wp;
    const auto g1 = couplings(atom, lg.g1, lg.eps_im1, k.w, u);
    const auto g2 = couplings(atom, lg.g2, lg.eps_im2, k.wp, u);
    const auto g3 = couplings(atom, lg.g3, lg.eps_im3, wpp, u);
    const int n = atom.n_levels();
    auto at = [n](const std::vector<Vec3c>& g, int a, int b) -> const Vec3c& { return g[std::size_t(a * n + b)]; };
    auto om = [&](int a, int b) { return transition_or_zero(atom, a, b); };

    Tensor3 out;
    for (int i = 0; i < n; ++i)
    {
        const double rho = atom.population(i);
        if (rho == 0.0)
            continue;
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk)
            {
                struct Piece
                {
                    int sign;
                    Vec3c a, b, c;
                    cplx d1, d2;
                };
                const Piece pieces[4] = {
                    {+1, at(g1, kk, j).conjugate(), at(g2, i, kk).conjugate(), at(g3, i, j), k.wp - om(i, kk),
                     wpp - om(i, j)},
                    {-1, at(g1, i, j).conjugate(), at(g2, kk, i).conjugate(), at(g3, kk, j), k.wp - om(kk, i),
                     wpp - om(kk, j)},
                    {-1, at(g1, kk, i).conjugate(), at(g2, i, j).conjugate(), at(g3, kk, j), k.wp - om(i, j),
                     wpp - om(kk, j)},
                    {+1, at(g1, j, kk).conjugate(), at(g2, kk, i).conjugate(), at(g3, j, i), k.wp - om(kk, i),
                     wpp - om(j, i)},
                };
                for (const auto& p : pieces)
                {
                    if (p.a.isZero(0.0) || p.b.isZero(0.0) || p.c.isZero(0.0))
                        continue;
                    accumulate(out, double(p.sign) * rho * checked_inverse(p.d1, p.d2), p.a, p.b, p.c);
                }
            }
    }
    return out;
}

Tensor3 k_tensor_factored(const AtomModel& atom, const PermittivityModel& host, GreenContext ctx,
                          const KTriple& k, const UnitSystem& u)
{
    const LegGreens lg = leg_greens(host, ctx, k, u);
    const double wpp = k.w + k.wp;
    const Tensor3 chi = chi2(atom, k.w, k.wp, u);
    const double c6 = std::pow(u.c, 6);
    // chi2 carries the opposite overall sign of the printed bracket, hence -i/hbar.
    const cplx pre = cplx(0.0, -1.0 / u.hbar) * std::pow(u.hbar * u.eps0 / std::numbers::pi, 1.5) *
                     (k.w * k.w * k.wp * k.wp * wpp * wpp) / (c6 * u.eps0 * u.eps0) *
                     std::sqrt(lg.eps_im1 * lg.eps_im2 * lg.eps_im3);
    Tensor3 out;
    if (pre == 0.0)
        return out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
            {
                const cplx x = chi(a, b, c);
                if (x == 0.0)
                    continue;
                for (int l = 0; l < 3; ++l)
                    for (int m = 0; m < 3; ++m)
                    {
                        const cplx xlm = x * std::conj(lg.g1(a, l)) * std::conj(lg.g2(b, m));
                        for (int v = 0; v < 3; ++v)
                            out(l, m, v) += xlm * lg.g3(c, v);
                    }
            }
    out *= pre;
    return out;
}

Tensor3 k_tensor_from_structure(const terms::CouplingStructure& s, const AtomModel& atom, const LegGreens& legs,
                                const KTriple& k, const UnitSystem& u)
{
    const double wpp = k.w + k.wp;
    const std::array<std::vector<Vec3c>, 3> g{couplings(atom, legs.g1, legs.eps_im1, k.w, u),
                                              couplings(atom, legs.g2, legs.eps_im2, k.wp, u),
                                              couplings(atom, legs.g3, legs.eps_im3, wpp, u)};
    const int n = atom.n_levels();
    Tensor3 out;
    for (const auto& sm : s)
    {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                {
                    const std::array<int, 4> lab{a, b, c, -1};
                    const double rho = atom.population(lab[std::size_t(sm.population_label)]);
                    if (rho == 0.0)
                        continue;
                    std::array<Vec3c, 3> v;
                    bool zero = false;
                    for (int f = 0; f < 3; ++f)
                    {
                        v[f] = g[f][std::size_t(lab[sm.pairs[f][0]] * n + lab[sm.pairs[f][1]])];
                        if (sm.conjugated[f])
                            v[f] = v[f].conjugate();
                        zero = zero || v[f].isZero(0.0);
                    }
                    if (zero)
                        continue;
                    std::array<cplx, 2> d;
                    for (int q = 0; q < 2; ++q)
                    {
                        const auto& den = sm.denominators[q];
                        d[q] = double(den.n_w) * k.w + double(den.n_wp) * k.wp;
                        if (den.transition[0] >= 0)
                            d[q] -= transition_or_zero(atom, lab[den.transition[0]], lab[den.transition[1]]);
                    }
                    accumulate(out, double(sm.sign) * rho * checked_inverse(d[0], d[1]), v[0], v[1], v[2]);
                }
    }
    return out;
}

LegPermittivities leg_permittivities(const PermittivityModel& host, double w, double wp)
{
    return {permittivity(host, w), permittivity(host, wp), permittivity(host, w + wp)};
}

LegPermittivities scale_absorption(const LegPermittivities& e, double t)
{
    auto s = [t](cplx x) { return cplx(x.real(), t * x.imag()); };
    return {s(e.e1), s(e.e2), s(e.e3)};
}

int ChannelWeights::noise_legs(int mask) { return (mask & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1); }

Tensor3 chi2_lfc(const AtomModel& atom, const LegPermittivities& eps, double w, double wp, const UnitSystem& u)
{
    Tensor3 t = chi2(atom, w, wp, u);
    t *= std::conj(dtilde(eps.e1)) * std::conj(dtilde(eps.e2)) * dtilde(eps.e3);
    return t;
}

ChannelWeights channel_decompose(const AtomModel& atom, const LegPermittivities& eps, double w, double wp,
                                 const UnitSystem& u)
{
    Tensor3 base = chi2_lfc(atom, eps, w, wp, u);
    base *= cplx(u.eps0);
    const std::array<cplx, 3> noise{std::conj(noise_lfc_factor(eps.e1, u)), std::conj(noise_lfc_factor(eps.e2, u)),
                                    noise_lfc_factor(eps.e3, u)};
    ChannelWeights cw;
    for (int mask = 0; mask < 8; ++mask)
    {
        cplx f = 1.0;
        for (int leg = 0; leg < 3; ++leg)
            if (mask & (4 >> leg))
                f *= noise[leg];
        cw.weight[mask] = f * base;
    }
    return cw;
}

ChannelWeights channel_decompose(const AtomModel& atom, const PermittivityModel& host, double w, double wp,
                                 const UnitSystem& u)
{
    return channel_decompose(atom, leg_permittivities(host, w, wp), w, wp, u);
}

std::array<double, 8> channel_magnitudes(const ChannelWeights& cw, const LegPermittivities& eps,
                                         const UnitSystem& u)
{
    const std::array<double, 3> amp{noise_amplitude_from_im(eps.e1.imag(), u),
                                    noise_amplitude_from_im(eps.e2.imag(), u),
                                    noise_amplitude_from_im(eps.e3.imag(), u)};
    std::array<double, 8> m{};
    for (int mask = 0; mask < 8; ++mask)
    {
        double v = cw.weight[mask].frobenius();
        for (int leg = 0; leg < 3; ++leg)
            if (mask & (4 >> leg))
                v *= amp[leg];
        m[mask] = v;
    }
    return m;
}

AbsorptionReport vanishing_absorption_limit(const AtomModel& atom, const PermittivityModel& host, double w,
                                            double wp, const std::vector<double>& scales, const UnitSystem& u)
{
    const LegPermittivities e = leg_permittivities(host, w, wp);
    AbsorptionReport r;
    r.scales = scales;
    for (double t : scales)
    {
        if (!(t > 0.0 && t <= 1.0))
            throw DomainError("vanishing_absorption_limit: scale must lie in (0, 1]");
        const auto et = scale_absorption(e, t);
        r.magnitudes.push_back(channel_magnitudes(channel_decompose(atom, et, w, wp, u), et, u));
    }
    for (int mask = 1; mask < 8; ++mask)
    {
        std::vector<double> y;
        for (const auto& m : r.magnitudes)
            y.push_back(m[mask]);
        bool positive = scales.size() >= 2;
        for (double v : y)
            positive = positive && v > 0.0;
        r.exponents[mask] = positive ? loglog_slope(scales, y) : 0.0;
    }

    const auto e0 = scale_absorption(e, 0.0);
    const auto cw0 = channel_decompose(atom, e0, w, wp, u);
    r.at_zero = channel_magnitudes(cw0, e0, u);
    Tensor3 ref = chi2(atom, w, wp, u);
    ref *= cplx(u.eps0) * std::conj(dtilde(e0.e1)) * std::conj(dtilde(e0.e2)) * dtilde(e0.e3);
    r.channel0_gap = relative_frobenius(cw0.weight[0], ref);
    return r;
}

ModeGrid::ModeGrid(std::vector<Mode> modes) : modes_(std::move(modes))
{
    for (std::size_t n = 0; n < modes_.size(); ++n)
    {
        const std::string p = "grids.modes[" + std::to_string(n) + "]";
        if (!(modes_[n].frequency > 0.0))
            throw ValidationError(p + ".frequency", "must be > 0");
        if (n > 0 && modes_[n].frequency < modes_[n - 1].frequency)
            throw ValidationError(p + ".frequency", "modes must be sorted by frequency");
        if (modes_[n].polarization < 0 || modes_[n].polarization > 2)
            throw ValidationError(p + ".polarization", "must be 0, 1 or 2");
    }
}

ModeTriple make_triple(const ModeGrid& grid, int a, int b, int c, cplx k)
{
    const int n = static_cast<int>(grid.size());
    if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
        throw DomainError("make_triple: mode index out of range");
    const double wa = grid.modes()[a].frequency, wb = grid.modes()[b].frequency, wc = grid.modes()[c].frequency;
    if (std::abs(wa + wb - wc) > 1e-12 * wc)
        throw DomainError("make_triple: w_a + w_b != w_c");
    return {a, b, c, k};
}

std::size_t fock_dimension(std::size_t modes, int max_total)
{
    // C(modes + N, N)
    double d = 1.0;
    for (int k = 1; k <= max_total; ++k)
        d = d * double(modes + std::size_t(k)) / double(k);
    return d > 1e18 ? std::size_t(-1) : static_cast<std::size_t>(std::llround(d));
}

std::vector<std::vector<int>> fock_basis(std::size_t modes, int max_total)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(modes, 0);
    auto rec = [&](auto&& self, std::size_t m, int left) -> void {
        if (m == modes)
        {
            out.push_back(cur);
            return;
        }
        for (int q = 0; q <= left; ++q)
        {
            cur[m] = q;
            self(self, m + 1, left - q);
        }
        cur[m] = 0;
    };
    rec(rec, 0, max_total);
    return out;
}

Eigen::SparseMatrix<cplx> hamiltonian_matrix(const ModeGrid& grid, const std::vector<ModeTriple>& triples,
                                             int max_total, const UnitSystem& u)
{
    if (max_total < 2)
        throw DomainError("hamiltonian_matrix: truncation must be >= 2");
    const std::size_t dim = fock_dimension(grid.size(), max_total);
    if (dim > 10000)
        throw DomainError("hamiltonian_matrix: Fock dimension exceeds 1e4");
    const auto basis = fock_basis(grid.size(), max_total);
    std::map<std::vector<int>, int> index;
    for (std::size_t n = 0; n < basis.size(); ++n)
        index[basis[n]] = static_cast<int>(n);

    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t col = 0; col < basis.size(); ++col)
    {
        for (const auto& t : triples)
        {
            std::vector<int> s = basis[col];
            if (s[t.c] == 0)
                continue;
            double amp = std::sqrt(double(s[t.c]));
            --s[t.c];
            amp *= std::sqrt(double(s[t.b] + 1));
            ++s[t.b];
            amp *= std::sqrt(double(s[t.a] + 1));
            ++s[t.a];
            auto it = index.find(s);
            if (it == index.end())
                continue;  // beyond the truncation
            const cplx v = -u.hbar * t.k * amp;
            trip.emplace_back(it->second, int(col), v);
            trip.emplace_back(int(col), it->second, std::conj(v));
        }
    }
    Eigen::SparseMatrix<cplx> h(int(basis.size()), int(basis.size()));
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

double hermiticity_defect(const Eigen::SparseMatrix<cplx>& h)
{
    const double n = h.norm();
    if (n == 0.0)
        return 0.0;
    Eigen::SparseMatrix<cplx> ha = h.adjoint();
    return (h - ha).norm() / n;
}

}  // namespace lfpdc
