#include "lfpdc/atom.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lfpdc/errors.hpp"

namespace lfpdc
{

namespace
{

std::string pair_name(const char* field, int i, int j)
{
    return std::string("atom.") + field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

constexpr double herm_tol = 1e-12;

}  // namespace

AtomModel::AtomModel(Data data) : d_(std::move(data))
{
    const int n = n_levels();
    if (n < 2)
        throw ValidationError("atom.levels", "need at least 2 levels");
    if (d_.shifts.size() == 0)
        d_.shifts = Eigen::MatrixXd::Zero(n, n);
    if (d_.shifts.rows() != n || d_.shifts.cols() != n)
        throw ValidationError("atom.shift", "must be n x n");
    if (d_.widths.rows() != n || d_.widths.cols() != n)
        throw ValidationError("atom.gamma", "must be n x n");
    for (int a = 0; a < 3; ++a)
    {
        if (d_.dipoles[a].size() == 0)
            d_.dipoles[a] = Eigen::MatrixXcd::Zero(n, n);
        if (d_.dipoles[a].rows() != n || d_.dipoles[a].cols() != n)
            throw ValidationError("atom.dipole", "must be n x n vectors");
    }
    if (static_cast<int>(d_.populations.size()) != n)
        throw ValidationError("atom.populations", "need one population per level");

    double dmax = 0.0;
    for (int a = 0; a < 3; ++a)
        dmax = std::max(dmax, d_.dipoles[a].cwiseAbs().maxCoeff());

    for (int i = 0; i < n; ++i)
    {
        d_.shifts(i, i) = 0.0;
        d_.widths(i, i) = 0.0;
        for (int j = 0; j < n; ++j)
        {
            if (i != j)
            {
                double g = d_.widths(i, j);
                if (!(g > 0.0) || !std::isfinite(g))
                    throw ValidationError(pair_name("gamma", i, j), "width must be > 0");
                if (g != d_.widths(j, i))
                    throw ValidationError(pair_name("gamma", i, j), "widths must be symmetric");
                if (d_.shifts(i, j) != -d_.shifts(j, i))
                    throw ValidationError(pair_name("shift", i, j), "shifts must be antisymmetric");
            }
            for (int a = 0; a < 3; ++a)
            {
                cplx dij = d_.dipoles[a](i, j);
                cplx dji = d_.dipoles[a](j, i);
                if (std::abs(dij - std::conj(dji)) > herm_tol * std::max(1.0, dmax))
                    throw ValidationError(pair_name("dipole", i, j), "dipole matrix is not Hermitian");
            }
        }
    }

    double sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double p = d_.populations[i];
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("atom.populations[" + std::to_string(i) + "]", "must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("atom.populations", "must sum to 1");
}

Vec3c AtomModel::dipole_vector(int i, int j) const
{
    return Vec3c(d_.dipoles[0](i, j), d_.dipoles[1](i, j), d_.dipoles[2](i, j));
}

double AtomModel::min_width() const
{
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_levels(); ++i)
        for (int j = 0; j < n_levels(); ++j)
            if (i != j)
                g = std::min(g, d_.widths(i, j));
    return g;
}

bool AtomModel::has_permanent_dipoles() const
{
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < n_levels(); ++i)
            if (d_.dipoles[a](i, i) != 0.0)
                return true;
    return false;
}

AtomModel AtomModel::scaled_dipoles(double s) const
{
    Data d = d_;
    for (auto& m : d.dipoles)
        m *= s;
    return AtomModel(std::move(d));
}

AtomModel AtomModel::with_populations(std::vector<double> p) const
{
    Data d = d_;
    d.populations = std::move(p);
    return AtomModel(std::move(d));
}

cplx dressed_frequency(const AtomModel& atom, int i, int j)
{
    if (i == j)
        throw DomainError("dressed_frequency: diagonal transition is undefined");
    const auto& d = atom.data();
    return {d.bare_freqs[i] - d.bare_freqs[j] + d.shifts(i, j), d.widths(i, j)};
}

cplx transition_or_zero(const AtomModel& atom, int i, int j)
{
    return i == j ? cplx(0.0) : dressed_frequency(atom, i, j);
}

const Chi2Pattern& appendix_pattern()
{
    // labels: 0 = i, 1 = j, 2 = k
    static const Chi2Pattern p{{
        {+1, {{{1, 2}, {2, 0}, {0, 1}}}, {0, 2}, {0, 1}},
        {-1, {{{0, 1}, {2, 0}, {1, 2}}}, {0, 2}, {1, 2}},
        {-1, {{{2, 0}, {0, 1}, {1, 2}}}, {1, 0}, {1, 2}},
        {+1, {{{1, 2}, {0, 1}, {2, 0}}}, {1, 0}, {2, 0}},
    }};
    return p;
}

const Chi2Pattern& section3_pattern()
{
    static const Chi2Pattern p{{
        {+1, {{{1, 2}, {2, 0}, {0, 1}}}, {0, 2}, {0, 1}},
        {-1, {{{0, 2}, {1, 0}, {2, 1}}}, {0, 1}, {2, 1}},
        {-1, {{{1, 0}, {0, 2}, {2, 1}}}, {2, 0}, {2, 1}},
        {+1, {{{2, 1}, {0, 2}, {1, 0}}}, {2, 0}, {1, 0}},
    }};
    return p;
}

Tensor3 chi2_with_pattern(const AtomModel& atom, const Chi2Pattern& pattern, double w, double wp,
                          const UnitSystem& u)
{
    const int n = atom.n_levels();
    Tensor3 out;
    for (int i = 0; i < n; ++i)
    {
        double rho = atom.population(i);
        if (rho == 0.0)
            continue;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                const std::array<int, 3> lab{i, j, k};
                for (const auto& t : pattern)
                {
                    std::array<Vec3c, 3> d;
                    bool zero = false;
                    for (int f = 0; f < 3; ++f)
                    {
                        d[f] = atom.dipole_vector(lab[t.dipole[f][0]], lab[t.dipole[f][1]]);
                        zero = zero || d[f].isZero(0.0);
                    }
                    if (zero)
                        continue;
                    cplx den1 = wp - transition_or_zero(atom, lab[t.den1[0]], lab[t.den1[1]]);
                    cplx den2 = w + wp - transition_or_zero(atom, lab[t.den2[0]], lab[t.den2[1]]);
                    if (std::abs(den1) < 1e-12 || std::abs(den2) < 1e-12)
                        throw DomainError("chi2: near-singular energy denominator");
                    cplx pre = double(t.sign) * rho / (den1 * den2);
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                        {
                            cplx ab = pre * d[0](a) * d[1](b);
                            for (int c = 0; c < 3; ++c)
                                out(a, b, c) += ab * d[2](c);
                        }
                }
            }
    }
    // 1/((i hbar)^2 eps0) times the extra -1 of the double time integral
    out *= cplx(1.0 / (u.hbar * u.hbar * u.eps0));
    return out;
}

Tensor3 chi2(const AtomModel& atom, double w, double wp, const UnitSystem& u)
{
    return chi2_with_pattern(atom, appendix_pattern(), w, wp, u);
}

cplx chi2_component(const AtomModel& atom, int a, int b, int c, double w, double wp, const UnitSystem& u)
{
    const int n = atom.n_levels();
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double rho = atom.population(i);
        if (rho == 0.0)
            continue;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                const std::array<int, 3> lab{i, j, k};
                for (const auto& t : appendix_pattern())
                {
                    cplx num = atom.dipole(a, lab[t.dipole[0][0]], lab[t.dipole[0][1]]) *
                               atom.dipole(b, lab[t.dipole[1][0]], lab[t.dipole[1][1]]) *
                               atom.dipole(c, lab[t.dipole[2][0]], lab[t.dipole[2][1]]);
                    if (num == 0.0)
                        continue;
                    cplx den1 = wp - transition_or_zero(atom, lab[t.den1[0]], lab[t.den1[1]]);
                    cplx den2 = w + wp - transition_or_zero(atom, lab[t.den2[0]], lab[t.den2[1]]);
                    if (std::abs(den1) < 1e-12 || std::abs(den2) < 1e-12)
                        throw DomainError("chi2: near-singular energy denominator");
                    sum += double(t.sign) * rho * num / (den1 * den2);
                }
            }
    }
    return sum / (u.hbar * u.hbar * u.eps0);
}

namespace
{

using MatC = Eigen::MatrixXcd;

// (U(t) X)_ab = X_ab exp(i w_ba t), populations untouched.
MatC propagate(const AtomModel& atom, const MatC& x, double t)
{
    const int n = atom.n_levels();
    MatC y = x;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b)
                y(a, b) *= std::exp(cplx(0.0, 1.0) * dressed_frequency(atom, b, a) * t);
    return y;
}

MatC rho0(const AtomModel& atom)
{
    const int n = atom.n_levels();
    MatC r = MatC::Zero(n, n);
    for (int i = 0; i < n; ++i)
        r(i, i) = atom.population(i);
    return r;
}

double chi2_prefactor(const UnitSystem& u)
{
    // 1 / ((i hbar)^2 eps0)
    return -1.0 / (u.hbar * u.hbar * u.eps0);
}

}  // namespace

Tensor3 chi2_time_oracle(const AtomModel& atom, double tau1, double tau2, const UnitSystem& u)
{
    if (tau1 < 0.0 || tau2 < tau1)
        throw DomainError("chi2_time_oracle: need tau2 >= tau1 >= 0");
    const MatC r = rho0(atom);
    const auto& dip = atom.data().dipoles;
    Tensor3 out;
    for (int b = 0; b < 3; ++b)
    {
        MatC y = propagate(atom, dip[b] * r - r * dip[b], tau2 - tau1);
        for (int a = 0; a < 3; ++a)
        {
            MatC z = propagate(atom, dip[a] * y - y * dip[a], tau1);
            for (int c = 0; c < 3; ++c)
                out(a, b, c) = chi2_prefactor(u) * (dip[c] * z).trace();
        }
    }
    return out;
}

Tensor3 chi2_from_oracle(const AtomModel& atom, double w, double wp, const UnitSystem& u,
                         const OracleOptions& opt)
{
    const int n = atom.n_levels();
    const double gmin = atom.min_width();
    if (!(gmin > 0.0))
        throw DomainError("chi2_from_oracle: needs every width > 0");
    if (atom.has_permanent_dipoles())
        throw DomainError("chi2_from_oracle: permanent dipoles give undamped pathways");

    double wmax = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                wmax = std::max(wmax, std::abs(dressed_frequency(atom, i, j).real()));
    const double omega = std::abs(w) + std::abs(wp) + wmax;
    const double tmax = std::log(1.0 / opt.truncation) / gmin;
    const double h0 = opt.step_scale * std::min(1.0 / omega, 1.0 / gmin);
    long m = static_cast<long>(std::ceil(tmax / h0));
    m += m % 2;
    const double h = tmax / double(m);

    auto simpson = [&](long k) {
        if (k == 0 || k == m)
            return h / 3.0;
        return (k % 2 ? 4.0 : 2.0) * h / 3.0;
    };

    // The integrand is Tr{d_c U(tau1) M(s)} with M(s) = [d_a, U(s)[d_b, rho]],
    // tau2 = tau1 + s. U(tau1) acts elementwise, so the tau1 Simpson sum of
    // each element can be done once and reused for every s node.
    const cplx iu(0.0, 1.0);
    MatC wt = MatC::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
        {
            if (a == b)
                continue;
            cplx rate = iu * (dressed_frequency(atom, b, a) - (w + wp));
            cplx acc = 0.0;
            for (long k = 0; k <= m; ++k)
                acc += simpson(k) * std::exp(rate * (double(k) * h));
            wt(a, b) = acc;
        }

    const auto& dip = atom.data().dipoles;
    std::array<MatC, 3> q;
    for (int c = 0; c < 3; ++c)
        q[c] = dip[c].transpose().cwiseProduct(wt);

    const MatC r = rho0(atom);
    std::array<MatC, 3> x;
    for (int b = 0; b < 3; ++b)
        x[b] = dip[b] * r - r * dip[b];

    Tensor3 out;
    for (long k = 0; k <= m; ++k)
    {
        const double s = double(k) * h;
        const cplx ws = simpson(k) * std::exp(-iu * wp * s);
        for (int b = 0; b < 3; ++b)
        {
            MatC y = propagate(atom, x[b], s);
            for (int a = 0; a < 3; ++a)
            {
                MatC mm = dip[a] * y - y * dip[a];
                for (int c = 0; c < 3; ++c)
                    out(a, b, c) += ws * q[c].cwiseProduct(mm).sum();
            }
        }
    }
    out *= cplx(chi2_prefactor(u));
    return out;
}

Vec3c coupling_g(const AtomModel& atom, int i, int j, const Mat3c& green, double eps_im, double w,
                 const UnitSystem& u)
{
    if (eps_im < 0.0)
        throw DomainError("coupling_g: Im eps < 0");
    const cplx pre = cplx(0.0, 1.0) / std::sqrt(u.hbar * u.eps0 * std::numbers::pi) * (w * w) /
                     (u.c * u.c) * std::sqrt(eps_im);
    return pre * (green.transpose() * atom.dipole_vector(i, j));
}

}  // namespace lfpdc
