#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lfpdc/tensor.hpp"
#include "lfpdc/units.hpp"

namespace lfpdc
{

// N-level atom with dressed transitions and a diagonal initial state.
class AtomModel
{
public:
    struct Data
    {
        std::vector<double> bare_freqs;   // per level
        Eigen::MatrixXd shifts;           // antisymmetric, diagonal ignored
        Eigen::MatrixXd widths;           // symmetric, > 0 off the diagonal
        std::array<Eigen::MatrixXcd, 3> dipoles;  // dipoles[a](i, j) = d_{a,ij}
        std::vector<double> populations;
    };

    // Validates every invariant; throws ValidationError naming the field.
    explicit AtomModel(Data data);

    int n_levels() const { return static_cast<int>(d_.bare_freqs.size()); }
    const Data& data() const { return d_; }

    cplx dipole(int a, int i, int j) const { return d_.dipoles[a](i, j); }
    Vec3c dipole_vector(int i, int j) const;
    double population(int i) const { return d_.populations[i]; }
    double width(int i, int j) const { return d_.widths(i, j); }
    double min_width() const;
    bool has_permanent_dipoles() const;

    // Same atom with every dipole multiplied by s.
    AtomModel scaled_dipoles(double s) const;

    // Same atom with the given populations.
    AtomModel with_populations(std::vector<double> p) const;

private:
    Data d_;
};

// w_ij = (w~_i - w~_j) + dw_ij + i G_ij. Throws for i == j.
cplx dressed_frequency(const AtomModel& atom, int i, int j);

// As above but returns 0 for i == j. Used where a coincident index
// appears in a denominator together with a permanent dipole.
cplx transition_or_zero(const AtomModel& atom, int i, int j);

// One summand of the sum-over-states formula. Labels 0, 1, 2 stand for i, j, k.
struct Chi2Summand
{
    int sign;
    std::array<std::array<int, 2>, 3> dipole;  // label pairs for the alpha, beta, gamma factors
    std::array<int, 2> den1;                    // (w' - w_xy)
    std::array<int, 2> den2;                    // (w + w' - w_xy)
};

using Chi2Pattern = std::array<Chi2Summand, 4>;

const Chi2Pattern& appendix_pattern();
const Chi2Pattern& section3_pattern();

// Sum-over-states second-order polarizability with dressed denominators.
Tensor3 chi2(const AtomModel& atom, double w, double wp, const UnitSystem& u);

// One entry (a, b, c) of chi2, without building the full tensor.
cplx chi2_component(const AtomModel& atom, int a, int b, int c, double w, double wp, const UnitSystem& u);

// Same sum using an explicit index pattern.
Tensor3 chi2_with_pattern(const AtomModel& atom, const Chi2Pattern& pattern, double w, double wp,
                          const UnitSystem& u);

// Nested commutator trace in the time domain, tau2 >= tau1 >= 0.
Tensor3 chi2_time_oracle(const AtomModel& atom, double tau1, double tau2, const UnitSystem& u);

struct OracleOptions
{
    double step_scale = 0.1;     // h = step_scale * min(1 / Omega_max, 1 / Gamma_min)
    double truncation = 1e-8;    // exp(-Gamma_min T) target
};

// Numerical double Fourier transform of chi2_time_oracle over the wedge.
Tensor3 chi2_from_oracle(const AtomModel& atom, double w, double wp, const UnitSystem& u,
                         const OracleOptions& opt = {});

// g_{l,ij} = (i / sqrt(hbar eps0 pi)) (w^2 / c^2) sqrt(eps_im) d_{m,ij} G_{ml}
Vec3c coupling_g(const AtomModel& atom, int i, int j, const Mat3c& green, double eps_im, double w,
                 const UnitSystem& u);

}  // namespace lfpdc
