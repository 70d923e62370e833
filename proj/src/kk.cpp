#include "lfpdc/kk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lfpdc/errors.hpp"

namespace lfpdc
{

FrequencyGrid::FrequencyGrid(double half_width, std::size_t n_points) : l_(half_width), n_(n_points)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ValidationError("grid.half_width", "must be > 0");
    if (n_points < 5 || n_points % 2 == 0)
        throw ValidationError("grid.points", "need an odd number of points, at least 5");
    h_ = 2.0 * l_ / double(n_ - 1);
}

std::vector<double> FrequencyGrid::points() const
{
    std::vector<double> p(n_);
    for (std::size_t k = 0; k < n_; ++k)
        p[k] = (*this)[k];
    return p;
}

std::size_t FrequencyGrid::index_of(double w) const
{
    double x = (w + l_) / h_;
    double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || r < 0.0 || r > double(n_ - 1))
        throw DomainError("FrequencyGrid: frequency is not a grid node");
    return static_cast<std::size_t>(r);
}

cplx pv_integral_at(const std::vector<cplx>& f, const FrequencyGrid& grid, std::size_t p)
{
    const std::size_t n = grid.size();
    if (f.size() != n)
        throw DomainError("pv_integral: sample count does not match grid");
    if (p < 1 || p + 2 > n)
        throw DomainError("pv_integral: pole within one spacing of the boundary");
    const double h = grid.spacing();
    const double w = grid[p];

    // Pairs p-m, p+m: f(p-m)/(m h) - f(p+m)/(m h), times the node weight h.
    const std::size_t mmax = std::min(p, n - 1 - p);
    cplx sym = -0.5 * (f[p + 1] - f[p - 1]);  // pole node: -h f'(w)
    for (std::size_t m = 1; m <= mmax; ++m)
    {
        double wt = (m == mmax) ? 0.5 : 1.0;
        sym += wt * (f[p - m] - f[p + m]) / double(m);
    }

    // Leftover one-sided stretch, plain trapezoid on a regular integrand.
    cplx rest = 0.0;
    std::size_t lo, hi;
    if (p - mmax > 0)
    {
        lo = 0;
        hi = p - mmax;
    }
    else
    {
        lo = p + mmax;
        hi = n - 1;
    }
    for (std::size_t k = lo; k <= hi && hi > lo; ++k)
    {
        double wt = (k == lo || k == hi) ? 0.5 : 1.0;
        rest += wt * f[k] / (w - grid[k]);
    }
    return sym + h * rest;
}

cplx pv_integral(const std::vector<cplx>& f, const FrequencyGrid& grid, double pole)
{
    return pv_integral_at(f, grid, grid.index_of(pole));
}

LinearKKProfile linear_kk_profile(const std::function<cplx(double)>& chi, const FrequencyGrid& grid,
                                  const LinearKKOptions& opt)
{
    const std::size_t n = grid.size();
    std::vector<cplx> v(n), re(n), im(n);
    LinearKKProfile out;
    for (std::size_t k = 0; k < n; ++k)
    {
        v[k] = chi(grid[k]);
        re[k] = v[k].real();
        im[k] = v[k].imag();
        out.scale = std::max(out.scale, std::abs(v[k]));
    }
    if (opt.require_decay && out.scale > 0.0)
    {
        double edge = std::max(std::abs(v.front()), std::abs(v.back()));
        if (!(edge < opt.decay_tolerance * out.scale))
            throw DomainError("linear_kk_residual: function does not decay at the grid ends");
    }

    // pv_integral uses 1/(w - w'); the upper half-plane relations use 1/(w' - w).
    const double s = opt.analytic_in == HalfPlane::lower ? 1.0 : -1.0;
    for (std::size_t k = 1; k + 1 < n; ++k)
    {
        if (std::abs(grid[k]) > 0.5 * grid.half_width())
            continue;
        out.w.push_back(grid[k]);
        out.value.push_back(v[k]);
        out.re_reconstructed.push_back(s * pv_integral_at(im, grid, k).real() / std::numbers::pi);
        out.im_reconstructed.push_back(-s * pv_integral_at(re, grid, k).real() / std::numbers::pi);
    }
    return out;
}

double linear_kk_residual(const std::function<cplx(double)>& chi, const FrequencyGrid& grid,
                          const LinearKKOptions& opt)
{
    const auto p = linear_kk_profile(chi, grid, opt);
    if (p.scale == 0.0)
        return 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < p.w.size(); ++k)
        worst = std::max({worst, std::abs(p.value[k].real() - p.re_reconstructed[k]),
                          std::abs(p.value[k].imag() - p.im_reconstructed[k])});
    return worst / p.scale;
}

void TTermParams::validate() const
{
    if (!(gamma_ab > 0.0))
        throw ValidationError("t_term.gamma_ab", "must be > 0");
    if (!(gamma_ad > 0.0))
        throw ValidationError("t_term.gamma_ad", "must be > 0");
}

cplx t_term(const TTermParams& p, double w, double wp)
{
    return p.amplitude / ((w - cplx(p.w_ab, p.gamma_ab)) * (w + wp - cplx(p.w_ad, p.gamma_ad)));
}

cplx t_term_residue_identity(const TTermParams& p, double w, double wp)
{
    p.validate();
    const cplx a(p.w_ab, p.gamma_ab);
    const cplx b(p.w_ad, p.gamma_ad);
    const cplx A = p.amplitude;
    const cplx iu(0.0, 1.0);
    const double pi = std::numbers::pi;
    const cplx c = b - wp;
    const cplx t = A / ((w - a) * (w + wp - b));

    // P int T(x, w') / (x - w) dx: poles at x = a and x = b - w' above the axis,
    // half residue at x = w on the axis.
    const cplx i_w = 2.0 * pi * iu * (A / ((a - w) * (a + wp - b)) + A / ((c - w) * (c - a))) + iu * pi * t;
    // P int T(w, y) / (y - w') dy: pole at y = b - w.
    const cplx i_wp = 2.0 * pi * iu * A / ((w - a) * (b - w - wp)) + iu * pi * t;
    // Inner integral over y of the double integral is -i pi T(x, w'), so the
    // double integral is -i pi times i_w.
    const cplx i_ww = -iu * pi * i_w;

    return -i_ww / (3.0 * pi * pi) + iu / (3.0 * pi) * i_w + iu / (3.0 * pi) * i_wp;
}

NonlinearKKParts nonlinear_kk_parts(const std::function<cplx(double, double)>& chi, double w, double wp,
                                    const FrequencyGrid& grid, const NonlinearKKOptions& opt)
{
    const std::size_t n = grid.size();
    const std::size_t p = grid.index_of(w);
    const std::size_t q = grid.index_of(wp);
    std::vector<cplx> row(n), inner(n), col(n), row_p;
    double vmax = 0.0, edge = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double x = grid[k];
        for (std::size_t m = 0; m < n; ++m)
        {
            row[m] = chi(x, grid[m]);
            double a = std::abs(row[m]);
            vmax = std::max(vmax, a);
            if (k == 0 || k == n - 1 || m == 0 || m == n - 1)
                edge = std::max(edge, a);
        }
        inner[k] = pv_integral_at(row, grid, q);
        col[k] = row[q];
        if (k == p)
            row_p = row;
    }
    NonlinearKKParts r;
    r.lhs = chi(w, wp);
    if (vmax == 0.0)
        return r;
    if (opt.require_decay && !(edge < opt.decay_tolerance * vmax))
        throw DomainError("nonlinear_kk_residual: function does not decay at the grid boundary");

    // pv_integral_at has 1/(w - x); each flip to 1/(x - w) costs a sign.
    r.double_pv = pv_integral_at(inner, grid, p);
    r.single_w = -pv_integral_at(col, grid, p);
    r.single_wp = -pv_integral_at(row_p, grid, q);
    const double pi = std::numbers::pi;
    const cplx iu(0.0, 1.0);
    r.rhs = -r.double_pv / (3.0 * pi * pi) - r.single_w / (3.0 * pi * iu) - r.single_wp / (3.0 * pi * iu);
    return r;
}

double nonlinear_kk_residual(const std::function<cplx(double, double)>& chi, double w, double wp,
                             const FrequencyGrid& grid, const NonlinearKKOptions& opt)
{
    const auto r = nonlinear_kk_parts(chi, w, wp, grid, opt);
    const double d = std::abs(r.lhs - r.rhs);
    const double l = std::abs(r.lhs);
    return l > 0.0 ? d / l : d;
}

}  // namespace lfpdc
