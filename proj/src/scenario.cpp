#include "lfpdc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "lfpdc/errors.hpp"

namespace lfpdc
{

namespace
{

using json = nlohmann::json;

std::string index_path(const std::string& p, std::size_t n) { return p + "[" + std::to_string(n) + "]"; }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        throw ValidationError(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k))
            throw ValidationError(path.empty() ? k : path + "." + k, "unknown key");
}

double get_number(const json& j, const std::string& path)
{
    if (!j.is_number())
        throw ValidationError(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        throw ValidationError(path, "must be finite");
    return v;
}

int get_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw ValidationError(path, "expected an integer");
    return j.get<int>();
}

// A number or [re, im].
cplx get_complex(const json& j, const std::string& path)
{
    if (j.is_number())
        return get_number(j, path);
    if (j.is_array() && j.size() == 2)
        return {get_number(j[0], index_path(path, 0)), get_number(j[1], index_path(path, 1))};
    throw ValidationError(path, "expected a number or [re, im]");
}

const json& get_array(const json& j, const std::string& path)
{
    if (!j.is_array())
        throw ValidationError(path, "expected an array");
    return j;
}

std::vector<double> get_numbers(const json& j, const std::string& path)
{
    std::vector<double> out;
    const auto& a = get_array(j, path);
    for (std::size_t n = 0; n < a.size(); ++n)
        out.push_back(get_number(a[n], index_path(path, n)));
    return out;
}

std::vector<cplx> get_complexes(const json& j, const std::string& path)
{
    std::vector<cplx> out;
    const auto& a = get_array(j, path);
    for (std::size_t n = 0; n < a.size(); ++n)
        out.push_back(get_complex(a[n], index_path(path, n)));
    return out;
}

Vec3 get_vec3(const json& j, const std::string& path)
{
    const auto v = get_numbers(j, path);
    if (v.size() != 3)
        throw ValidationError(path, "expected three components");
    return {v[0], v[1], v[2]};
}

std::vector<std::pair<double, double>> get_pairs(const json& j, const std::string& path)
{
    std::vector<std::pair<double, double>> out;
    const auto& a = get_array(j, path);
    for (std::size_t n = 0; n < a.size(); ++n)
    {
        const auto v = get_numbers(a[n], index_path(path, n));
        if (v.size() != 2)
            throw ValidationError(index_path(path, n), "expected [w, w']");
        out.emplace_back(v[0], v[1]);
    }
    return out;
}

Eigen::MatrixXd get_real_matrix(const json& j, const std::string& path, int n)
{
    const auto& rows = get_array(j, path);
    if (int(rows.size()) != n)
        throw ValidationError(path, "expected " + std::to_string(n) + " rows");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
    {
        const auto r = get_numbers(rows[std::size_t(i)], index_path(path, std::size_t(i)));
        if (int(r.size()) != n)
            throw ValidationError(index_path(path, std::size_t(i)), "expected " + std::to_string(n) + " columns");
        for (int k = 0; k < n; ++k)
            m(i, k) = r[std::size_t(k)];
    }
    return m;
}

UnitSystem parse_units(const json& j)
{
    if (j.is_string())
    {
        if (j.get<std::string>() == "natural")
            return natural_units();
        throw ValidationError("units", "only \"natural\" or an {hbar, eps0, c} object is accepted");
    }
    only_keys(j, "units", {"hbar", "eps0", "c"});
    UnitSystem u;
    if (j.contains("hbar"))
        u.hbar = get_number(j["hbar"], "units.hbar");
    if (j.contains("eps0"))
        u.eps0 = get_number(j["eps0"], "units.eps0");
    if (j.contains("c"))
        u.c = get_number(j["c"], "units.c");
    if (!(u.hbar > 0.0))
        throw ValidationError("units.hbar", "must be > 0");
    if (!(u.eps0 > 0.0))
        throw ValidationError("units.eps0", "must be > 0");
    if (!(u.c > 0.0))
        throw ValidationError("units.c", "must be > 0");
    return u;
}

PermittivityModel parse_media(const json& j)
{
    only_keys(j, "media", {"resonances"});
    std::vector<Resonance> res;
    if (j.contains("resonances"))
    {
        const auto& a = get_array(j["resonances"], "media.resonances");
        for (std::size_t n = 0; n < a.size(); ++n)
        {
            const std::string p = index_path("media.resonances", n);
            only_keys(a[n], p, {"wp", "wr", "gamma"});
            for (const char* key : {"wp", "wr", "gamma"})
                if (!a[n].contains(key))
                    throw ValidationError(p + "." + key, "missing");
            res.push_back({get_number(a[n]["wp"], p + ".wp"), get_number(a[n]["wr"], p + ".wr"),
                           get_number(a[n]["gamma"], p + ".gamma")});
        }
    }
    return PermittivityModel(std::move(res));
}

AtomModel parse_atom(const json& j)
{
    only_keys(j, "atom", {"levels", "gamma", "shift", "dipole", "populations"});
    for (const char* key : {"levels", "gamma", "dipole", "populations"})
        if (!j.contains(key))
            throw ValidationError(std::string("atom.") + key, "missing");
    AtomModel::Data d;
    d.bare_freqs = get_numbers(j["levels"], "atom.levels");
    const int n = int(d.bare_freqs.size());
    if (n < 2)
        throw ValidationError("atom.levels", "need at least two levels");
    d.widths = get_real_matrix(j["gamma"], "atom.gamma", n);
    d.shifts = j.contains("shift") ? get_real_matrix(j["shift"], "atom.shift", n) : Eigen::MatrixXd::Zero(n, n);

    const auto& rows = get_array(j["dipole"], "atom.dipole");
    if (int(rows.size()) != n)
        throw ValidationError("atom.dipole", "expected " + std::to_string(n) + " rows");
    for (auto& m : d.dipoles)
        m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
    {
        const std::string pi = index_path("atom.dipole", std::size_t(i));
        const auto& row = get_array(rows[std::size_t(i)], pi);
        if (int(row.size()) != n)
            throw ValidationError(pi, "expected " + std::to_string(n) + " columns");
        for (int k = 0; k < n; ++k)
        {
            const std::string pk = index_path(pi, std::size_t(k));
            const auto v = get_complexes(row[std::size_t(k)], pk);
            if (v.size() != 3)
                throw ValidationError(pk, "expected three components");
            for (int a = 0; a < 3; ++a)
                d.dipoles[a](i, k) = v[std::size_t(a)];
        }
    }
    d.populations = get_numbers(j["populations"], "atom.populations");
    return AtomModel(std::move(d));
}

CavityConfig parse_cavity(const json& j, const PermittivityModel& host)
{
    CavityConfig c;
    c.host = host;
    if (!j.is_null())
    {
        only_keys(j, "cavity", {"radius", "position"});
        if (j.contains("radius"))
            c.radius = get_number(j["radius"], "cavity.radius");
        if (j.contains("position"))
            c.position = get_vec3(j["position"], "cavity.position");
    }
    c.validate();
    return c;
}

std::size_t get_points(const json& j, const std::string& path)
{
    const int n = get_int(j, path);
    if (n < 5 || n % 2 == 0)
        throw ValidationError(path, "need an odd number of points, at least 5");
    return std::size_t(n);
}

double get_positive(const json& j, const std::string& path)
{
    const double v = get_number(j, path);
    if (!(v > 0.0))
        throw ValidationError(path, "must be > 0");
    return v;
}

Grids parse_grids(const json& j)
{
    Grids g;
    if (j.is_null())
        return g;
    only_keys(j, "grids", {"chi2_pairs", "mie", "kk_linear", "kk_nonlinear", "green", "k_tensor", "channels", "modes",
                           "truncation"});
    if (j.contains("chi2_pairs"))
        g.chi2_pairs = get_pairs(j["chi2_pairs"], "grids.chi2_pairs");
    if (j.contains("mie"))
    {
        const auto& m = j["mie"];
        only_keys(m, "grids.mie", {"eps", "z0"});
        if (m.contains("eps"))
            g.mie_eps = get_complexes(m["eps"], "grids.mie.eps");
        if (m.contains("z0"))
        {
            g.mie_z0 = get_numbers(m["z0"], "grids.mie.z0");
            for (std::size_t n = 0; n < g.mie_z0.size(); ++n)
                if (!(g.mie_z0[n] > 0.0))
                    throw ValidationError(index_path("grids.mie.z0", n), "must be > 0");
        }
    }
    if (j.contains("kk_linear"))
    {
        const auto& k = j["kk_linear"];
        only_keys(k, "grids.kk_linear", {"half_width", "points"});
        if (k.contains("half_width"))
            g.kk_linear_half_width = get_positive(k["half_width"], "grids.kk_linear.half_width");
        if (k.contains("points"))
            g.kk_linear_points = get_points(k["points"], "grids.kk_linear.points");
    }
    if (j.contains("kk_nonlinear"))
    {
        const auto& k = j["kk_nonlinear"];
        only_keys(k, "grids.kk_nonlinear", {"half_width", "points", "t_points", "atom_points", "t_term"});
        if (k.contains("half_width"))
            g.kk_nonlinear_half_width = get_positive(k["half_width"], "grids.kk_nonlinear.half_width");
        if (k.contains("points"))
            g.kk_nonlinear_points = get_points(k["points"], "grids.kk_nonlinear.points");
        if (k.contains("t_points"))
            g.kk_nonlinear_points_t = get_pairs(k["t_points"], "grids.kk_nonlinear.t_points");
        if (k.contains("atom_points"))
            g.kk_nonlinear_points_atom = get_pairs(k["atom_points"], "grids.kk_nonlinear.atom_points");
        if (k.contains("t_term"))
        {
            const auto& t = k["t_term"];
            const std::string p = "grids.kk_nonlinear.t_term";
            only_keys(t, p, {"amplitude", "w_ab", "gamma_ab", "w_ad", "gamma_ad"});
            if (t.contains("amplitude"))
                g.t_term.amplitude = get_complex(t["amplitude"], p + ".amplitude");
            if (t.contains("w_ab"))
                g.t_term.w_ab = get_number(t["w_ab"], p + ".w_ab");
            if (t.contains("gamma_ab"))
                g.t_term.gamma_ab = get_positive(t["gamma_ab"], p + ".gamma_ab");
            if (t.contains("w_ad"))
                g.t_term.w_ad = get_number(t["w_ad"], p + ".w_ad");
            if (t.contains("gamma_ad"))
                g.t_term.gamma_ad = get_positive(t["gamma_ad"], p + ".gamma_ad");
        }
    }
    if (j.contains("green"))
    {
        const auto& k = j["green"];
        only_keys(k, "grids.green", {"eps", "frequency", "source", "offsets", "step"});
        if (k.contains("eps"))
            g.green_eps = get_complexes(k["eps"], "grids.green.eps");
        if (k.contains("frequency"))
            g.green_frequency = get_positive(k["frequency"], "grids.green.frequency");
        if (k.contains("source"))
            g.green_source = get_vec3(k["source"], "grids.green.source");
        if (k.contains("offsets"))
        {
            g.green_offsets.clear();
            const auto& a = get_array(k["offsets"], "grids.green.offsets");
            for (std::size_t n = 0; n < a.size(); ++n)
            {
                g.green_offsets.push_back(get_vec3(a[n], index_path("grids.green.offsets", n)));
                if (g.green_offsets.back().norm() == 0.0)
                    throw ValidationError(index_path("grids.green.offsets", n), "probe coincides with the source");
            }
        }
        if (k.contains("step"))
            g.green_step = get_positive(k["step"], "grids.green.step");
    }
    if (j.contains("k_tensor"))
    {
        const auto& k = j["k_tensor"];
        only_keys(k, "grids.k_tensor", {"samples", "green"});
        if (k.contains("samples"))
        {
            g.k_tensor_samples = get_int(k["samples"], "grids.k_tensor.samples");
            if (g.k_tensor_samples < 1)
                throw ValidationError("grids.k_tensor.samples", "must be >= 1");
        }
        if (k.contains("green"))
        {
            const auto& s = k["green"];
            if (s == "bulk")
                g.green_context = GreenContext::bulk;
            else if (s == "local_field")
                g.green_context = GreenContext::local_field;
            else
                throw ValidationError("grids.k_tensor.green", "expected \"bulk\" or \"local_field\"");
        }
    }
    if (j.contains("channels"))
    {
        const auto& k = j["channels"];
        only_keys(k, "grids.channels", {"w", "wp", "scales"});
        if (k.contains("w"))
            g.channel_w = get_positive(k["w"], "grids.channels.w");
        if (k.contains("wp"))
            g.channel_wp = get_positive(k["wp"], "grids.channels.wp");
        if (k.contains("scales"))
        {
            g.channel_scales = get_numbers(k["scales"], "grids.channels.scales");
            for (std::size_t n = 0; n < g.channel_scales.size(); ++n)
                if (!(g.channel_scales[n] > 0.0 && g.channel_scales[n] <= 1.0))
                    throw ValidationError(index_path("grids.channels.scales", n), "must lie in (0, 1]");
        }
    }
    if (j.contains("modes"))
    {
        const auto& a = get_array(j["modes"], "grids.modes");
        for (std::size_t n = 0; n < a.size(); ++n)
        {
            const std::string p = index_path("grids.modes", n);
            only_keys(a[n], p, {"frequency", "position", "polarization"});
            if (!a[n].contains("frequency"))
                throw ValidationError(p + ".frequency", "missing");
            Mode m{get_number(a[n]["frequency"], p + ".frequency")};
            if (a[n].contains("position"))
                m.position = get_vec3(a[n]["position"], p + ".position");
            if (a[n].contains("polarization"))
                m.polarization = get_int(a[n]["polarization"], p + ".polarization");
            g.modes.push_back(m);
        }
        ModeGrid check(g.modes);
    }
    if (j.contains("truncation"))
    {
        g.truncation = get_int(j["truncation"], "grids.truncation");
        if (g.truncation < 2)
            throw ValidationError("grids.truncation", "must be >= 2");
    }
    return g;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k)
    {
        if (text[k] == '\n')
        {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return {line, col};
}

}  // namespace

std::map<std::string, double> default_tolerances()
{
    return {{"chi2_oracle", 1e-3},      {"mie_slope_target", 1.0},  {"mie_slope_tol", 0.3},
            {"mie_d_slope_target", 1.0}, {"kk_linear", 1e-3},        {"kk_linear_control", 0.9},
            {"kk_nonlinear", 1e-2},      {"kk_nonlinear_atom", 2e-2}, {"helmholtz", 1e-3},
            {"helmholtz_slope_tol", 0.3}, {"k_tensor", 1e-10},        {"channel_exp_1", 0.05},
            {"channel_exp_23", 0.1},     {"hermiticity", 1e-12}};
}

double Scenario::tol(const std::string& name) const
{
    auto it = tolerances.find(name);
    if (it == tolerances.end())
        throw ValidationError("tolerances." + name, "unknown tolerance");
    return it->second;
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes)
    {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario parse_scenario_text(const std::string& text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, col);
    }
    only_keys(j, "", {"units", "media", "atom", "cavity", "grids", "tolerances"});

    const UnitSystem u = j.contains("units") ? parse_units(j["units"]) : natural_units();
    const PermittivityModel media = j.contains("media") ? parse_media(j["media"]) : PermittivityModel::vacuum();
    if (!j.contains("atom"))
        throw ValidationError("atom", "missing");
    AtomModel atom = parse_atom(j["atom"]);
    CavityConfig cav = parse_cavity(j.contains("cavity") ? j["cavity"] : json(), media);
    Grids grids = parse_grids(j.contains("grids") ? j["grids"] : json());

    auto tol = default_tolerances();
    if (j.contains("tolerances"))
    {
        const auto& t = j["tolerances"];
        if (!t.is_object())
            throw ValidationError("tolerances", "expected an object");
        for (const auto& [k, v] : t.items())
        {
            if (!tol.count(k))
                throw ValidationError("tolerances." + k, "unknown tolerance");
            tol[k] = get_number(v, "tolerances." + k);
        }
    }
    return Scenario{u, media, std::move(atom), cav, std::move(grids), std::move(tol), fnv1a_hex(text)};
}

Scenario parse_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open scenario file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_scenario_text(s.str());
}

}  // namespace lfpdc
