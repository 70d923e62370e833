#include "lfpdc/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <variant>

#include "json.hpp"

#include "lfpdc/atom.hpp"
#include "lfpdc/effham.hpp"
#include "lfpdc/errors.hpp"
#include "lfpdc/fit.hpp"
#include "lfpdc/green.hpp"
#include "lfpdc/kk.hpp"
#include "lfpdc/lfc.hpp"
#include "lfpdc/sampling.hpp"
#include "lfpdc/terms.hpp"

namespace lfpdc
{

namespace fs = std::filesystem;

std::string format_double(double v)
{
    if (v == 0.0)
        v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace
{

using Cell = std::variant<double, long long, std::string>;

class Csv
{
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary)
    {
        if (!out_)
            throw std::runtime_error("cannot write " + path.string());
        row_strings(header);
    }

    void row(const std::vector<Cell>& cells)
    {
        std::vector<std::string> s;
        for (const auto& c : cells)
        {
            if (auto d = std::get_if<double>(&c))
                s.push_back(format_double(*d));
            else if (auto i = std::get_if<long long>(&c))
                s.push_back(std::to_string(*i));
            else
                s.push_back(std::get<std::string>(c));
        }
        row_strings(s);
    }

private:
    void row_strings(const std::vector<std::string>& s)
    {
        for (std::size_t k = 0; k < s.size(); ++k)
            out_ << (k ? "," : "") << s[k];
        out_ << '\n';
    }
    std::ofstream out_;
};

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string mask_string(int mask)
{
    std::string s;
    for (int leg = 0; leg < 3; ++leg)
        s += (mask & (4 >> leg)) ? '1' : '0';
    return s;
}

struct Context
{
    const Scenario& sc;
    fs::path out;
    std::uint64_t seed;
    std::vector<Check> checks;
    std::vector<std::string> files;

    fs::path file(const std::string& name)
    {
        files.push_back(name);
        return out / name;
    }

    void at_most(const std::string& name, double value, double tol)
    {
        checks.push_back({name, value, "<=", tol, 0.0, value <= tol});
    }
    void at_least(const std::string& name, double value, double tol)
    {
        checks.push_back({name, value, ">=", tol, 0.0, value >= tol});
    }
    void near(const std::string& name, double value, double target, double tol)
    {
        checks.push_back({name, value, "abs_dev<=", tol, target, std::abs(value - target) <= tol});
    }
};

void write_metadata(const Context& ctx, const std::string& sub)
{
    std::ofstream m(ctx.out / (sub + ".metadata.json"), std::ios::binary);
    m << "{\n";
    m << "  \"subcommand\": " << quoted(sub) << ",\n";
    m << "  \"scenario_hash\": " << quoted(ctx.sc.hash) << ",\n";
    m << "  \"seed\": " << ctx.seed << ",\n";
    m << "  \"tolerances\": {";
    bool first = true;
    for (const auto& [k, v] : ctx.sc.tolerances)
    {
        m << (first ? "\n" : ",\n") << "    " << quoted(k) << ": " << format_double(v);
        first = false;
    }
    m << "\n  },\n";
    m << "  \"files\": [";
    for (std::size_t k = 0; k < ctx.files.size(); ++k)
        m << (k ? ", " : "") << quoted(ctx.files[k]);
    m << "],\n";
    m << "  \"checks\": [";
    for (std::size_t k = 0; k < ctx.checks.size(); ++k)
    {
        const auto& c = ctx.checks[k];
        m << (k ? ",\n" : "\n") << "    {\"name\": " << quoted(c.name) << ", \"value\": " << format_double(c.value)
          << ", \"relation\": " << quoted(c.relation) << ", \"tolerance\": " << format_double(c.tolerance);
        if (c.relation == "abs_dev<=")
            m << ", \"target\": " << format_double(c.target);
        m << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
    }
    m << (ctx.checks.empty() ? "]\n" : "\n  ]\n");
    m << "}\n";
}

// ---- chi2 ----------------------------------------------------------------

void run_chi2(Context& ctx)
{
    const auto& sc = ctx.sc;
    Csv t(ctx.file("chi2.csv"), {"w", "wp", "a", "b", "c", "re_chi2", "im_chi2", "re_chi2_lfc", "im_chi2_lfc"});
    for (auto [w, wp] : sc.grids.chi2_pairs)
    {
        const Tensor3 x = chi2(sc.atom, w, wp, sc.units);
        const Tensor3 xl = chi2_lfc(sc.atom, sc.media, w, wp, sc.units);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    t.row({w, wp, (long long)a, (long long)b, (long long)c, x(a, b, c).real(), x(a, b, c).imag(),
                           xl(a, b, c).real(), xl(a, b, c).imag()});
    }

    // The time-domain oracle needs damped coherences and no permanent dipoles.
    if (sc.atom.has_permanent_dipoles() || !(sc.atom.min_width() > 0.0))
        return;
    Csv o(ctx.file("chi2_oracle.csv"), {"w", "wp", "rel_err"});
    double worst = 0.0;
    for (auto [w, wp] : sc.grids.chi2_pairs)
    {
        const double e = relative_frobenius(chi2(sc.atom, w, wp, sc.units), chi2_from_oracle(sc.atom, w, wp, sc.units));
        o.row({w, wp, e});
        worst = std::max(worst, e);
    }
    ctx.at_most("chi2_oracle", worst, sc.tol("chi2_oracle"));
}

// ---- mie -----------------------------------------------------------------

std::vector<double> default_z0()
{
    std::vector<double> z;
    for (int k = 0; k <= 10; ++k)
        z.push_back(std::pow(10.0, -4.0 + 0.25 * k));
    return z;
}

void run_mie(Context& ctx)
{
    const auto& sc = ctx.sc;
    const auto z0s = sc.grids.mie_z0.empty() ? default_z0() : sc.grids.mie_z0;
    Csv t(ctx.file("mie.csv"),
          {"eps_re", "eps_im", "z0", "re_c_exact", "im_c_exact", "re_c_series", "im_c_series", "rel_err",
           "c_remainder", "re_d_exact", "im_d_exact", "re_d_tilde", "im_d_tilde", "d_remainder"});
    Csv f(ctx.file("mie_fit.csv"), {"eps_re", "eps_im", "c_slope", "d_slope"});
    const double tol = sc.tol("mie_slope_tol");
    for (std::size_t e = 0; e < sc.grids.mie_eps.size(); ++e)
    {
        const cplx eps = sc.grids.mie_eps[e];
        std::vector<double> rc, rd;
        for (double z : z0s)
        {
            const cplx ce = mie_C_exact(eps, z);
            const cplx cs = z < 0.1 ? mie_C_expansion(eps, z) : cplx(NAN, NAN);
            const cplx de = mie_D_exact(eps, z);
            const cplx dt = dtilde(eps);
            const double crem = mie_C_remainder(eps, z);
            const double drem = mie_D_remainder(eps, z);
            rc.push_back(crem);
            rd.push_back(drem);
            t.row({eps.real(), eps.imag(), z, ce.real(), ce.imag(), cs.real(), cs.imag(), std::abs(ce - cs) / std::abs(ce),
                   crem, de.real(), de.imag(), dt.real(), dt.imag(), drem});
        }
        const bool fit = z0s.size() >= 2 && std::all_of(rc.begin(), rc.end(), [](double v) { return v > 0.0; }) &&
                         std::all_of(rd.begin(), rd.end(), [](double v) { return v > 0.0; });
        const double sc_ = fit ? loglog_slope(z0s, rc) : NAN;
        const double sd = fit ? loglog_slope(z0s, rd) : NAN;
        f.row({eps.real(), eps.imag(), sc_, sd});
        const std::string tag = "[" + std::to_string(e) + "]";
        if (std::isnan(sc_) || std::isnan(sd))
            continue;  // vacuum: both remainders vanish identically
        ctx.near("mie_c_slope" + tag, sc_, sc.tol("mie_slope_target"), tol);
        ctx.near("mie_d_slope" + tag, sd, sc.tol("mie_d_slope_target"), tol);
    }
}

// ---- kk-lin --------------------------------------------------------------

void run_kk_lin(Context& ctx)
{
    const auto& sc = ctx.sc;
    const FrequencyGrid grid(sc.grids.kk_linear_half_width, sc.grids.kk_linear_points);
    const auto host = [&](double w) { return permittivity(sc.media, w) - 1.0; };
    const auto p = linear_kk_profile(host, grid);
    Csv t(ctx.file("kk_linear.csv"), {"w", "re_chi", "im_chi", "re_chi_kk", "im_chi_kk", "residual"});
    double worst = 0.0;
    for (std::size_t k = 0; k < p.w.size(); ++k)
    {
        const double r = p.scale > 0.0 ? std::max(std::abs(p.value[k].real() - p.re_reconstructed[k]),
                                                  std::abs(p.value[k].imag() - p.im_reconstructed[k])) /
                                             p.scale
                                       : 0.0;
        worst = std::max(worst, r);
        t.row({p.w[k], p.value[k].real(), p.value[k].imag(), p.re_reconstructed[k], p.im_reconstructed[k], r});
    }
    // A frequency-independent response has no causal partner.
    LinearKKOptions nc;
    nc.require_decay = false;
    const double control = linear_kk_residual([](double) { return cplx(1.0, 0.0); }, grid, nc);

    Csv s(ctx.file("kk_linear_summary.csv"), {"case", "residual"});
    s.row({std::string("host"), worst});
    s.row({std::string("constant_control"), control});
    ctx.at_most("kk_linear", worst, sc.tol("kk_linear"));
    ctx.at_least("kk_linear_control", control, sc.tol("kk_linear_control"));
}

// ---- kk-nl ---------------------------------------------------------------

void run_kk_nl(Context& ctx)
{
    const auto& sc = ctx.sc;
    const FrequencyGrid grid(sc.grids.kk_nonlinear_half_width, sc.grids.kk_nonlinear_points);
    Csv t(ctx.file("kk_nonlinear.csv"),
          {"case", "w", "wp", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "residual"});
    const auto& tp = sc.grids.t_term;
    tp.validate();
    double worst_t = 0.0;
    for (auto [w, wp] : sc.grids.kk_nonlinear_points_t)
    {
        const auto r = nonlinear_kk_parts([&](double x, double y) { return t_term(tp, x, y); }, w, wp, grid);
        const double res = std::abs(r.lhs - r.rhs) / std::abs(r.lhs);
        worst_t = std::max(worst_t, res);
        t.row({std::string("t_term"), w, wp, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), res});
    }
    if (!sc.grids.kk_nonlinear_points_t.empty())
        ctx.at_most("kk_nonlinear_t_term", worst_t, sc.tol("kk_nonlinear"));

    double worst_a = 0.0;
    for (auto [w, wp] : sc.grids.kk_nonlinear_points_atom)
    {
        // The largest entry at the test point.
        const Tensor3 x = chi2(sc.atom, w, wp, sc.units);
        int best = 0;
        for (int k = 1; k < 27; ++k)
            if (std::abs(x.flat()[k]) > std::abs(x.flat()[best]))
                best = k;
        const int a = best / 9, b = (best / 3) % 3, c = best % 3;
        const auto r = nonlinear_kk_parts(
            [&](double p, double q) { return chi2_component(sc.atom, a, b, c, p, q, sc.units); }, w, wp, grid);
        const double res = std::abs(r.lhs) > 0.0 ? std::abs(r.lhs - r.rhs) / std::abs(r.lhs) : std::abs(r.rhs);
        worst_a = std::max(worst_a, res);
        t.row({"atom_" + std::to_string(a) + std::to_string(b) + std::to_string(c), w, wp, r.lhs.real(),
               r.lhs.imag(), r.rhs.real(), r.rhs.imag(), res});
    }
    if (!sc.grids.kk_nonlinear_points_atom.empty())
        ctx.at_most("kk_nonlinear_atom", worst_a, sc.tol("kk_nonlinear_atom"));
}

// ---- green-check ---------------------------------------------------------

void run_green(Context& ctx)
{
    const auto& sc = ctx.sc;
    const auto& g = sc.grids;
    Csv t(ctx.file("green_check.csv"), {"eps_re", "eps_im", "probe", "x", "y", "z", "h", "residual"});
    Csv f(ctx.file("green_fit.csv"), {"eps_re", "eps_im", "probe", "residual", "slope"});
    double worst = 0.0, worst_slope = 0.0;
    for (const cplx eps : g.green_eps)
    {
        const double k = std::abs(std::sqrt(eps)) * g.green_frequency / sc.units.c;
        for (std::size_t p = 0; p < g.green_offsets.size(); ++p)
        {
            const Vec3 r = g.green_source + g.green_offsets[p];
            std::vector<double> hs, rs;
            for (double s : {4.0, 2.0, 1.0})
            {
                const double h = s * g.green_step / k;
                hs.push_back(h);
                rs.push_back(helmholtz_residual(g.green_frequency, eps, g.green_source, r, h, sc.units));
                t.row({eps.real(), eps.imag(), (long long)p, r.x(), r.y(), r.z(), h, rs.back()});
            }
            const double slope = loglog_slope(hs, rs);
            f.row({eps.real(), eps.imag(), (long long)p, rs.back(), slope});
            worst = std::max(worst, rs.back());
            worst_slope = std::max(worst_slope, std::abs(slope - 2.0));
        }
    }
    ctx.at_most("helmholtz", worst, sc.tol("helmholtz"));
    ctx.at_most("helmholtz_slope_dev", worst_slope, sc.tol("helmholtz_slope_tol"));
}

// ---- k-tensor ------------------------------------------------------------

std::vector<Mode> default_modes(const Scenario& sc)
{
    const double w = sc.grids.channel_w, wp = sc.grids.channel_wp;
    const Vec3 o = sc.cavity.position;
    std::vector<Mode> m{{w, o + Vec3(1.5, 0, 0), 0}, {wp, o + Vec3(0, 1.5, 0), 1}, {w + wp, o + Vec3(0, 0, 1.5), 2}};
    std::sort(m.begin(), m.end(), [](const Mode& a, const Mode& b) { return a.frequency < b.frequency; });
    return m;
}

void run_k_tensor(Context& ctx)
{
    const auto& sc = ctx.sc;
    Rng rng(ctx.seed);
    std::uniform_real_distribution<double> freq(0.2, 0.8), coord(-1.0, 1.0);
    auto point = [&]() {
        Vec3 v;
        do
            v = Vec3(coord(rng), coord(rng), coord(rng));
        while (v.norm() < 0.2);
        return Vec3(sc.cavity.position + 3.0 * v);
    };
    const auto structure = terms::replay();

    Csv t(ctx.file("k_tensor.csv"),
          {"sample", "l", "m", "v", "re_k_sum", "im_k_sum", "re_k_factored", "im_k_factored"});
    Csv g(ctx.file("k_tensor_gap.csv"), {"sample", "w", "wp", "gap_factored", "gap_structure"});
    double worst = 0.0;
    for (int n = 0; n < sc.grids.k_tensor_samples; ++n)
    {
        KTriple k;
        k.r_atom = sc.cavity.position;
        k.s = point();
        k.s_prime = point();
        k.r = point();
        k.w = freq(rng);
        k.wp = freq(rng);
        const Tensor3 a = k_tensor_sum(sc.atom, sc.media, sc.grids.green_context, k, sc.units);
        const Tensor3 b = k_tensor_factored(sc.atom, sc.media, sc.grids.green_context, k, sc.units);
        const Tensor3 c = k_tensor_from_structure(structure, sc.atom,
                                                  leg_greens(sc.media, sc.grids.green_context, k, sc.units), k, sc.units);
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m)
                for (int v = 0; v < 3; ++v)
                    t.row({(long long)n, (long long)l, (long long)m, (long long)v, a(l, m, v).real(), a(l, m, v).imag(),
                           b(l, m, v).real(), b(l, m, v).imag()});
        const double gf = relative_frobenius(a, b), gs = relative_frobenius(c, a);
        g.row({(long long)n, k.w, k.wp, gf, gs});
        worst = std::max({worst, gf, gs});
    }
    ctx.at_most("k_tensor", worst, sc.tol("k_tensor"));

    // Truncated Hamiltonian on the mode grid, one term per energy-conserving triple.
    const ModeGrid modes(sc.grids.modes.empty() ? default_modes(sc) : sc.grids.modes);
    std::vector<ModeTriple> triples;
    const int nm = int(modes.size());
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b)
            for (int c = 0; c < nm; ++c)
            {
                const auto& ma = modes.modes()[a];
                const auto& mb = modes.modes()[b];
                const auto& mc = modes.modes()[c];
                if (std::abs(ma.frequency + mb.frequency - mc.frequency) > 1e-12 * mc.frequency)
                    continue;
                KTriple k{sc.cavity.position, ma.position, mb.position, mc.position, ma.frequency, mb.frequency};
                const Tensor3 kt = k_tensor_sum(sc.atom, sc.media, sc.grids.green_context, k, sc.units);
                triples.push_back(make_triple(modes, a, b, c, kt(ma.polarization, mb.polarization, mc.polarization)));
            }
    const auto h = hamiltonian_matrix(modes, triples, sc.grids.truncation, sc.units);
    const double defect = hermiticity_defect(h);
    Csv hm(ctx.file("hamiltonian.csv"), {"modes", "truncation", "dimension", "triples", "nonzeros", "hermiticity_defect"});
    hm.row({(long long)nm, (long long)sc.grids.truncation, (long long)h.rows(), (long long)triples.size(),
            (long long)h.nonZeros(), defect});
    ctx.at_most("hermiticity", defect, sc.tol("hermiticity"));
}

// ---- channels ------------------------------------------------------------

void run_channels(Context& ctx)
{
    const auto& sc = ctx.sc;
    const double w = sc.grids.channel_w, wp = sc.grids.channel_wp;
    const auto e = leg_permittivities(sc.media, w, wp);
    if (!(e.e1.imag() > 0.0 && e.e2.imag() > 0.0 && e.e3.imag() > 0.0))
        throw DomainError("the host does not absorb at w, w' and w + w'");

    const auto cw = channel_decompose(sc.atom, e, w, wp, sc.units);
    Csv t(ctx.file("channel_weights.csv"), {"channel", "noise_legs", "l", "m", "v", "re_weight", "im_weight"});
    for (int mask = 0; mask < 8; ++mask)
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m)
                for (int v = 0; v < 3; ++v)
                {
                    const cplx x = cw.weight[mask](l, m, v);
                    t.row({mask_string(mask), (long long)ChannelWeights::noise_legs(mask), (long long)l, (long long)m,
                           (long long)v, x.real(), x.imag()});
                }

    const auto rep = vanishing_absorption_limit(sc.atom, sc.media, w, wp, sc.grids.channel_scales, sc.units);
    Csv s(ctx.file("channel_scaling.csv"), {"scale", "channel", "noise_legs", "magnitude"});
    for (std::size_t k = 0; k < rep.scales.size(); ++k)
        for (int mask = 0; mask < 8; ++mask)
            s.row({rep.scales[k], mask_string(mask), (long long)ChannelWeights::noise_legs(mask), rep.magnitudes[k][mask]});

    Csv f(ctx.file("channel_fit.csv"), {"channel", "noise_legs", "exponent", "expected", "magnitude_at_zero"});
    double zero_noise = 0.0;
    for (int mask = 0; mask < 8; ++mask)
    {
        const int n = ChannelWeights::noise_legs(mask);
        f.row({mask_string(mask), (long long)n, rep.exponents[mask], 0.5 * n, rep.at_zero[mask]});
        if (mask == 0)
            continue;
        zero_noise = std::max(zero_noise, rep.at_zero[mask]);
        if (rep.scales.size() >= 2)
            ctx.near("channel_exponent_" + mask_string(mask), rep.exponents[mask], 0.5 * n,
                     sc.tol(n == 1 ? "channel_exp_1" : "channel_exp_23"));
    }
    ctx.at_most("channel_noise_at_zero", zero_noise, 0.0);
    ctx.at_most("channel_000_gap", rep.channel0_gap, sc.tol("k_tensor"));
}

// ---- rwa-derive ----------------------------------------------------------

void run_rwa(Context& ctx)
{
    const auto s = terms::replay();
    std::ofstream(ctx.file("rwa_derive.txt"), std::ios::binary) << terms::format_structure(s);
    const bool same = s == terms::reference_k_structure();
    ctx.at_most("rwa_term_count_dev", std::abs(double(s.size()) - 4.0), 0.0);
    ctx.at_most("rwa_structure_mismatch", same ? 0.0 : 1.0, 0.0);
}

using Runner = void (*)(Context&);

const std::vector<std::pair<std::string, Runner>>& runners()
{
    static const std::vector<std::pair<std::string, Runner>> r{
        {"chi2", run_chi2},       {"mie", run_mie},         {"kk-lin", run_kk_lin},
        {"kk-nl", run_kk_nl},     {"green-check", run_green}, {"k-tensor", run_k_tensor},
        {"channels", run_channels}, {"rwa-derive", run_rwa}};
    return r;
}

std::string file_stem(const std::string& sub)
{
    std::string s = sub;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

}  // namespace

const std::vector<std::string>& subcommand_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, f] : runners())
            n.push_back(k);
        n.push_back("all");
        return n;
    }();
    return names;
}

void write_error_record(const fs::path& out, const std::string& kind, const std::string& message,
                        const std::string& path, std::size_t line, std::size_t column)
{
    std::error_code ec;
    fs::create_directories(out, ec);
    std::ofstream e(out / "error.json", std::ios::binary);
    e << "{\n  \"error\": " << quoted(kind) << ",\n  \"message\": " << quoted(message);
    if (!path.empty())
        e << ",\n  \"path\": " << quoted(path);
    if (line > 0)
        e << ",\n  \"line\": " << line << ",\n  \"column\": " << column;
    e << "\n}\n";
}

int run(const std::string& subcommand, Scenario scenario, const fs::path& out, const RunOptions& opt)
{
    try
    {
        for (const auto& [k, v] : opt.tol_overrides)
        {
            if (!scenario.tolerances.count(k))
                throw ValidationError("tolerances." + k, "unknown tolerance");
            scenario.tolerances[k] = v;
        }
        fs::create_directories(out);
        if (subcommand == "all")
        {
            int worst = 0;
            for (const auto& [name, f] : runners())
                worst = std::max(worst, run(name, scenario, out, {opt.seed, {}}));
            return worst;
        }
        Runner fn = nullptr;
        for (const auto& [name, f] : runners())
            if (name == subcommand)
                fn = f;
        if (!fn)
            throw ValidationError("subcommand", "unknown subcommand " + subcommand);

        Context ctx{scenario, out, opt.seed, {}, {}};
        fn(ctx);
        write_metadata(ctx, file_stem(subcommand));
        for (const auto& c : ctx.checks)
            if (!c.pass)
                return 1;
        return 0;
    }
    catch (const ValidationError& e)
    {
        write_error_record(out, "validation", e.what(), e.path());
    }
    catch (const DomainError& e)
    {
        write_error_record(out, "domain", std::string(subcommand) + ": " + e.what());
    }
    catch (const std::exception& e)
    {
        write_error_record(out, "runtime", std::string(subcommand) + ": " + e.what());
    }
    return 2;
}

}  // namespace lfpdc
