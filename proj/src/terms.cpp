#include "lfpdc/terms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lfpdc::terms
{

void Phase::add_transition(int a, int b, int s)
{
    level[a] += s;
    level[b] -= s;
    for (auto it = level.begin(); it != level.end();)
        it = it->second == 0 ? level.erase(it) : std::next(it);
}

bool Phase::atomic_free() const { return level.empty(); }

namespace
{

struct Bracket
{
    int sign;
    std::array<int, 2> g;   // coupling index pair
    std::array<int, 2> op;  // resulting atomic operator
};

// Slot A keeps the left index of sigma_xy, slot B keeps the right one.
Bracket bracket(CouplingConvention conv, Character ch, bool slot_a, int x, int y, int n)
{
    if (ch == Character::annihilation)
        return slot_a ? Bracket{+1, {y, n}, {x, n}} : Bracket{-1, {n, x}, {n, y}};
    switch (conv)
    {
    case CouplingConvention::sigma2_display:
        return slot_a ? Bracket{+1, {n, y}, {x, n}} : Bracket{-1, {x, n}, {n, y}};
    case CouplingConvention::recursive_as_printed:
        return slot_a ? Bracket{+1, {y, n}, {x, n}} : Bracket{-1, {x, n}, {n, y}};
    case CouplingConvention::atomic_eom_as_printed:
        return slot_a ? Bracket{+1, {y, n}, {x, n}} : Bracket{-1, {n, x}, {n, y}};
    }
    throw std::logic_error("unknown convention");
}

// One resubstitution of sigma_xy at time level `lvl` (1 -> t', 2 -> t'').
void substitute(SymbolicTerm& t, CouplingConvention conv, Character ch, bool slot_a, int lvl, int n, Slot slot)
{
    const int x = t.op.pair[0], y = t.op.pair[1];
    const Bracket b = bracket(conv, ch, slot_a, x, y, n);
    t.sign *= b.sign;
    t.i_power += 3;  // -i
    t.factors.push_back({ch == Character::creation, ch, b.g, slot});
    // e^{i w_xy (t_{lvl-1} - t_lvl)} and the field phase e^{+-i w t_lvl}
    t.phases[lvl - 1].add_transition(x, y, +1);
    t.phases[lvl].add_transition(x, y, -1);
    int s = ch == Character::creation ? +1 : -1;
    (slot == Slot::w ? t.phases[lvl].n_w : t.phases[lvl].n_wp) += s;
    t.op = {AtomicOp::flip, b.op};
}

void substitute_label(std::array<int, 2>& p, int from, int to)
{
    for (auto& v : p)
        if (v == from)
            v = to;
}

Denominator denominator_of(const Phase& ph)
{
    Denominator d{ph.n_w, ph.n_wp, {-1, -1}};
    if (ph.level.empty())
        return d;
    if (ph.level.size() != 2)
        throw std::invalid_argument("integrate_time_nested: malformed exponent signature");
    int a = -1, b = -1;
    for (const auto& [lab, c] : ph.level)
    {
        if (c == -1)
            a = lab;
        else if (c == +1)
            b = lab;
        else
            throw std::invalid_argument("integrate_time_nested: malformed exponent signature");
    }
    if (a < 0 || b < 0)
        throw std::invalid_argument("integrate_time_nested: malformed exponent signature");
    d.transition = {a, b};
    return d;
}

int slot_index(Slot s) { return s == Slot::w ? 0 : s == Slot::wp ? 1 : 2; }

CanonicalSummand apply_map(const CanonicalSummand& s, const std::map<int, int>& m)
{
    CanonicalSummand r = s;
    r.population_label = m.at(s.population_label);
    for (auto& p : r.pairs)
        for (auto& v : p)
            v = m.at(v);
    for (auto& d : r.denominators)
        for (auto& v : d.transition)
            if (v >= 0)
                v = m.at(v);
    return r;
}

CanonicalSummand canonicalize(const CanonicalSummand& s)
{
    std::set<int> used{s.population_label};
    for (const auto& p : s.pairs)
        used.insert(p.begin(), p.end());
    for (const auto& d : s.denominators)
        for (int v : d.transition)
            if (v >= 0)
                used.insert(v);
    std::vector<int> from(used.begin(), used.end());
    std::vector<int> to(from.size());
    std::iota(to.begin(), to.end(), 0);
    bool have = false;
    CanonicalSummand best = s;
    do
    {
        std::map<int, int> m;
        for (std::size_t n = 0; n < from.size(); ++n)
            m[from[n]] = to[n];
        CanonicalSummand c = apply_map(s, m);
        if (!have || c.key() < best.key())
        {
            best = c;
            have = true;
        }
    } while (std::next_permutation(to.begin(), to.end()));
    return best;
}

CanonicalSummand to_summand(const SymbolicTerm& t)
{
    if (!t.integrated || t.factors.size() != 3 || t.denominators.size() != 2 ||
        t.op.kind != AtomicOp::diagonal)
        throw std::invalid_argument("to_coupling_structure: term is not filtered and integrated");
    // Every summand carries the -i of the field equation.
    int ip = ((t.i_power % 4) + 4) % 4;
    int sign;
    if (ip == 1)
        sign = -t.sign;
    else if (ip == 3)
        sign = t.sign;
    else
        throw std::invalid_argument("to_coupling_structure: unexpected real coefficient");
    CanonicalSummand s;
    s.sign = sign;
    s.population_label = t.op.pair[0];
    for (const auto& f : t.factors)
    {
        int k = slot_index(f.slot);
        s.conjugated[k] = f.conjugated;
        s.pairs[k] = f.pair;
    }
    s.denominators = {t.denominators[0], t.denominators[1]};
    return s;
}

const char* label_name(int l)
{
    static const char* names[] = {"i", "j", "k", "p"};
    return (l >= 0 && l < 4) ? names[l] : "?";
}

std::string freq_part(int n_w, int n_wp)
{
    std::string out;
    auto add = [&](int c, const char* name) {
        if (c == 0)
            return;
        if (!out.empty())
            out += c > 0 ? " + " : " - ";
        else if (c < 0)
            out += "-";
        if (std::abs(c) != 1)
            out += std::to_string(std::abs(c));
        out += name;
    };
    add(n_w, "w");
    add(n_wp, "w'");
    return out;
}

std::string format_denominator(const Denominator& d)
{
    std::string f = freq_part(d.n_w, d.n_wp);
    if (d.transition[0] >= 0)
        f += std::string(f.empty() ? "-" : " - ") + "w_" + label_name(d.transition[0]) + label_name(d.transition[1]);
    return "(" + (f.empty() ? std::string("0") : f) + ")";
}

std::string format_phase(const Phase& p)
{
    std::string f = freq_part(p.n_w, p.n_wp);
    for (const auto& [lab, c] : p.level)
    {
        f += (c > 0 ? (f.empty() ? "" : " + ") : (f.empty() ? "-" : " - "));
        if (std::abs(c) != 1)
            f += std::to_string(std::abs(c));
        f += std::string("E_") + label_name(lab);
    }
    return f.empty() ? "0" : f;
}

const char* slot_name(Slot s) { return s == Slot::w ? "w" : s == Slot::wp ? "w'" : "w''"; }

}  // namespace

std::vector<SymbolicTerm> expand_atomic_solution(int order, CouplingConvention conv)
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("expand_atomic_solution: only orders 1 and 2 are supported");
    SymbolicTerm root;
    root.sign = 1;
    root.i_power = 3;  // -i g_{nu,ij} sigma_ij in the field equation
    root.factors.push_back({false, Character::none, {I, J}, Slot::wpp});
    root.op = {AtomicOp::flip, {I, J}};

    const Character chars[] = {Character::creation, Character::annihilation};
    std::vector<SymbolicTerm> lvl1;
    for (bool a : {true, false})
        for (Character c : chars)
        {
            SymbolicTerm t = root;
            substitute(t, conv, c, a, 1, K, Slot::w);
            lvl1.push_back(t);
        }
    if (order == 1)
    {
        for (auto& t : lvl1)
        {
            // lowest order: sigma_ab(t') -> sigma_ab(0) e^{i w_ab t'}
            t.phases[1].add_transition(t.op.pair[0], t.op.pair[1], +1);
            t.op.kind = AtomicOp::initial;
        }
        return lvl1;
    }
    std::vector<SymbolicTerm> out;
    for (const auto& base : lvl1)
        for (bool a : {true, false})
            for (Character c : chars)
            {
                SymbolicTerm t = base;
                substitute(t, conv, c, a, 2, P, Slot::wp);
                out.push_back(t);
            }
    return out;
}

std::vector<SymbolicTerm> filter_rwa(const std::vector<SymbolicTerm>& terms)
{
    std::vector<SymbolicTerm> out;
    for (const auto& t0 : terms)
    {
        if (t0.op.kind == AtomicOp::initial)
            continue;
        if (t0.factors.size() != 3)
            continue;
        bool creation = true;
        for (std::size_t n = 1; n < t0.factors.size(); ++n)
            creation = creation && t0.factors[n].character == Character::creation;
        if (!creation)
            continue;

        // Keep the diagonal member of the sum over the newest label.
        SymbolicTerm t = t0;
        int other;
        if (t.op.pair[1] == P && t.op.pair[0] != P)
            other = t.op.pair[0];
        else if (t.op.pair[0] == P && t.op.pair[1] != P)
            other = t.op.pair[1];
        else
            continue;
        for (auto& f : t.factors)
            substitute_label(f.pair, P, other);
        for (auto& ph : t.phases)
        {
            auto it = ph.level.find(P);
            if (it != ph.level.end())
            {
                int c = it->second;
                ph.level.erase(it);
                ph.level[other] += c;
                if (ph.level[other] == 0)
                    ph.level.erase(other);
            }
        }
        t.op = {AtomicOp::diagonal, {other, other}};

        Phase total;
        for (const auto& ph : t.phases)
        {
            total.n_w += ph.n_w;
            total.n_wp += ph.n_wp;
            for (const auto& [lab, c] : ph.level)
                total.level[lab] += c;
        }
        for (auto it = total.level.begin(); it != total.level.end();)
            it = it->second == 0 ? total.level.erase(it) : std::next(it);
        if (total.n_w != 1 || total.n_wp != 1 || !total.atomic_free())
            continue;
        out.push_back(t);
    }
    return out;
}

SymbolicTerm integrate_time_nested(const SymbolicTerm& term)
{
    if (term.integrated)
        throw std::invalid_argument("integrate_time_nested: term already integrated");
    const Phase& a = term.phases[1];
    const Phase& b = term.phases[2];
    const bool a_zero = a.n_w == 0 && a.n_wp == 0 && a.atomic_free();
    const bool b_zero = b.n_w == 0 && b.n_wp == 0 && b.atomic_free();
    if (a_zero && b_zero)
        return term;

    // int_0^t dt' e^{iAt'} int_0^t' dt'' e^{iBt''} -> -e^{i(A+B)t} / (B (A+B)),
    // the only piece that survives next to e^{i w_ij t} at frequency w + w'.
    Phase ab = a;
    ab.n_w += b.n_w;
    ab.n_wp += b.n_wp;
    for (const auto& [lab, c] : b.level)
        ab.level[lab] += c;
    for (auto it = ab.level.begin(); it != ab.level.end();)
        it = it->second == 0 ? ab.level.erase(it) : std::next(it);

    SymbolicTerm r = term;
    r.denominators = {denominator_of(b), denominator_of(ab)};
    r.sign = -r.sign;
    Phase t = term.phases[0];
    t.n_w += ab.n_w;
    t.n_wp += ab.n_wp;
    for (const auto& [lab, c] : ab.level)
        t.level[lab] += c;
    for (auto it = t.level.begin(); it != t.level.end();)
        it = it->second == 0 ? t.level.erase(it) : std::next(it);
    r.phases = {t, Phase{}, Phase{}};
    r.integrated = true;
    return r;
}

CouplingStructure raw_structure(const std::vector<SymbolicTerm>& terms)
{
    CouplingStructure s;
    for (const auto& t : terms)
        s.push_back(to_summand(t));
    return s;
}

CouplingStructure to_coupling_structure(const std::vector<SymbolicTerm>& terms)
{
    CouplingStructure s;
    for (const auto& t : terms)
        s.push_back(canonicalize(to_summand(t)));
    std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
    return s;
}

CouplingStructure reference_k_structure()
{
    auto mk = [](int sign, std::array<int, 2> g1, std::array<int, 2> g2, std::array<int, 2> g3,
                 std::array<int, 2> d1, std::array<int, 2> d2) {
        CanonicalSummand s;
        s.sign = sign;
        s.population_label = I;
        s.conjugated = {true, true, false};
        s.pairs = {g1, g2, g3};
        s.denominators = {Denominator{0, 1, d1}, Denominator{1, 1, d2}};
        return canonicalize(s);
    };
    CouplingStructure s{
        mk(+1, {K, J}, {I, K}, {I, J}, {I, K}, {I, J}),
        mk(-1, {I, J}, {K, I}, {K, J}, {K, I}, {K, J}),
        mk(-1, {K, I}, {I, J}, {K, J}, {I, J}, {K, J}),
        mk(+1, {J, K}, {K, I}, {J, I}, {K, I}, {J, I}),
    };
    std::sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
    return s;
}

CouplingStructure replay(CouplingConvention conv)
{
    std::vector<SymbolicTerm> integrated;
    for (const auto& t : filter_rwa(expand_atomic_solution(2, conv)))
        integrated.push_back(integrate_time_nested(t));
    return to_coupling_structure(integrated);
}

SymbolicTerm relabel(const SymbolicTerm& t, const std::map<int, int>& perm)
{
    auto m = [&](int v) {
        auto it = perm.find(v);
        return it == perm.end() ? v : it->second;
    };
    SymbolicTerm r = t;
    for (auto& f : r.factors)
        f.pair = {m(f.pair[0]), m(f.pair[1])};
    r.op.pair = {m(r.op.pair[0]), m(r.op.pair[1])};
    for (auto& ph : r.phases)
    {
        std::map<int, int> lv;
        for (const auto& [lab, c] : ph.level)
            lv[m(lab)] += c;
        ph.level = lv;
    }
    for (auto& d : r.denominators)
        if (d.transition[0] >= 0)
            d.transition = {m(d.transition[0]), m(d.transition[1])};
    return r;
}

std::string format_term(const SymbolicTerm& t)
{
    std::ostringstream os;
    int ip = ((t.i_power % 4) + 4) % 4;
    static const char* ipow[] = {"", "i", "", "i"};
    int sign = (ip >= 2) ? -t.sign : t.sign;
    os << (sign > 0 ? "+" : "-") << ipow[ip];
    for (const auto& f : t.factors)
    {
        os << " g" << (f.conjugated ? "*" : "") << "[" << slot_name(f.slot) << "]_" << label_name(f.pair[0])
           << label_name(f.pair[1]);
        if (f.character == Character::creation)
            os << " f+";
        else if (f.character == Character::annihilation)
            os << " f";
    }
    const char* kind = t.op.kind == AtomicOp::diagonal ? "sigma" : t.op.kind == AtomicOp::flip ? "sigma" : "sigma0";
    os << " " << kind << "_" << label_name(t.op.pair[0]) << label_name(t.op.pair[1]);
    if (!t.integrated)
    {
        os << " phase[t]=" << format_phase(t.phases[0]) << " phase[t']=" << format_phase(t.phases[1])
           << " phase[t'']=" << format_phase(t.phases[2]);
    }
    else
    {
        os << " /";
        for (const auto& d : t.denominators)
            os << " " << format_denominator(d);
        os << " phase[t]=" << format_phase(t.phases[0]);
    }
    return os.str();
}

std::string format_structure(const CouplingStructure& s)
{
    std::ostringstream os;
    for (const auto& c : s)
    {
        os << (c.sign > 0 ? "+" : "-") << " sigma_" << label_name(c.population_label) << label_name(c.population_label);
        static const char* slots[] = {"w", "w'", "w''"};
        for (int k = 0; k < 3; ++k)
            os << " g" << (c.conjugated[k] ? "*" : "") << "[" << slots[k] << "]_" << label_name(c.pairs[k][0])
               << label_name(c.pairs[k][1]);
        os << " / " << format_denominator(c.denominators[0]) << format_denominator(c.denominators[1]) << "\n";
    }
    return os.str();
}

}  // namespace lfpdc::terms
