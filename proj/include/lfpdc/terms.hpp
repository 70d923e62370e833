#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace lfpdc::terms
{

// Symbolic level labels. The field equation starts from sigma_ij; each
// resubstitution introduces one fresh summation label.
enum Label : int
{
    I = 0,
    J = 1,
    K = 2,
    P = 3
};

enum class Slot
{
    w,    // omega
    wp,   // omega'
    wpp   // omega''
};

enum class Character
{
    none,          // the outer g_nu leg of the field equation
    creation,      // g* f^dagger
    annihilation   // g f
};

struct Factor
{
    bool conjugated;
    Character character;
    std::array<int, 2> pair;
    Slot slot;
};

struct AtomicOp
{
    enum Kind
    {
        diagonal,
        flip,     // sigma_ab(t''), still dynamic
        initial   // sigma_ab(0) e^{i w_ab t'}
    } kind;
    std::array<int, 2> pair;
};

// Formal real-frequency combination n_w w + n_wp w' + sum_l e_l E_l where
// w_ab = E_a - E_b.
struct Phase
{
    int n_w = 0;
    int n_wp = 0;
    std::map<int, int> level;

    void add_transition(int a, int b, int s);
    bool atomic_free() const;
    bool operator==(const Phase&) const = default;
};

// (n_w w + n_wp w' - w_ab)
struct Denominator
{
    int n_w;
    int n_wp;
    std::array<int, 2> transition;
    bool operator==(const Denominator&) const = default;
};

struct SymbolicTerm
{
    int sign = 1;
    int i_power = 0;             // coefficient is sign * i^i_power
    std::vector<Factor> factors; // outer leg first, then one per resubstitution
    AtomicOp op{AtomicOp::initial, {I, J}};
    std::array<Phase, 3> phases; // coefficients of t, t', t''
    std::vector<Denominator> denominators;
    bool integrated = false;
};

// Which index pattern the f^dagger bracket of the atomic equation uses.
// With new label n acting on sigma_xy:
//   sigma2_display:        + g*_{ny} sigma_xn - g*_{xn} sigma_ny
//   recursive_as_printed:  + g*_{yn} sigma_xn - g*_{xn} sigma_ny
//   atomic_eom_as_printed: + g*_{yn} sigma_xn - g*_{nx} sigma_ny
enum class CouplingConvention
{
    sigma2_display,
    recursive_as_printed,
    atomic_eom_as_printed
};

std::vector<SymbolicTerm> expand_atomic_solution(int order,
                                                 CouplingConvention conv = CouplingConvention::sigma2_display);

std::vector<SymbolicTerm> filter_rwa(const std::vector<SymbolicTerm>& terms);

SymbolicTerm integrate_time_nested(const SymbolicTerm& term);

struct CanonicalSummand
{
    int sign;
    int population_label;
    std::array<bool, 3> conjugated;
    std::array<std::array<int, 2>, 3> pairs;
    std::array<Denominator, 2> denominators;

    auto key() const
    {
        return std::tuple(population_label, pairs, denominators[0].transition, denominators[1].transition,
                          denominators[0].n_w, denominators[0].n_wp, denominators[1].n_w, denominators[1].n_wp,
                          conjugated, sign);
    }
    bool operator==(const CanonicalSummand&) const = default;
};

using CouplingStructure = std::vector<CanonicalSummand>;

CouplingStructure to_coupling_structure(const std::vector<SymbolicTerm>& terms);

// The four summands of the nonlinear coupling tensor, as printed, in canonical form.
CouplingStructure reference_k_structure();

// Raw (uncanonicalized) summands in the order they come out of the replay.
CouplingStructure raw_structure(const std::vector<SymbolicTerm>& terms);

// Full replay: expand(2) -> filter -> integrate -> canonicalize.
CouplingStructure replay(CouplingConvention conv = CouplingConvention::sigma2_display);

// Apply a label permutation to every label in a term.
SymbolicTerm relabel(const SymbolicTerm& t, const std::map<int, int>& perm);

std::string format_term(const SymbolicTerm& t);
std::string format_structure(const CouplingStructure& s);

}  // namespace lfpdc::terms
