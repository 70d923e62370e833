#pragma once

#include <array>
#include <vector>

#include <Eigen/Sparse>

#include "lfpdc/atom.hpp"
#include "lfpdc/media.hpp"
#include "lfpdc/tensor.hpp"
#include "lfpdc/terms.hpp"
#include "lfpdc/units.hpp"

namespace lfpdc
{

// Which Green tensor links the atom to the field points.
enum class GreenContext
{
    bulk,         // G^B of the homogeneous host
    local_field   // D~ G^B; the delta term vanishes away from the atom
};

// Atom position, the two emission points and the pump point, plus the
// signal/idler frequencies. The pump frequency is always w + w'.
struct KTriple
{
    Vec3 r_atom = Vec3::Zero();
    Vec3 s = Vec3::UnitX();
    Vec3 s_prime = Vec3::UnitY();
    Vec3 r = Vec3::UnitZ();
    double w = 1.0;
    double wp = 1.0;
};

struct LegGreens
{
    Mat3c g1, g2, g3;    // at (s, w), (s', w'), (r, w + w')
    double eps_im1, eps_im2, eps_im3;
};

LegGreens leg_greens(const PermittivityModel& host, GreenContext ctx, const KTriple& k, const UnitSystem& u);

// K_{lambda mu nu}: the four-term g* g* g sum over levels.
Tensor3 k_tensor_sum(const AtomModel& atom, const PermittivityModel& host, GreenContext ctx, const KTriple& k,
                     const UnitSystem& u);

// Same tensor from chi2 contracted with three Green tensors.
Tensor3 k_tensor_factored(const AtomModel& atom, const PermittivityModel& host, GreenContext ctx,
                          const KTriple& k, const UnitSystem& u);

// Numeric value of a symbolic coupling structure for the given atom and legs.
Tensor3 k_tensor_from_structure(const terms::CouplingStructure& s, const AtomModel& atom, const LegGreens& legs,
                                const KTriple& k, const UnitSystem& u);

// Permittivity at the three leg frequencies w, w', w + w'.
struct LegPermittivities
{
    cplx e1, e2, e3;
};

LegPermittivities leg_permittivities(const PermittivityModel& host, double w, double wp);

// Imaginary parts multiplied by t.
LegPermittivities scale_absorption(const LegPermittivities& e, double t);

// Eight channel weights indexed by a 3-bit mask, leg 1 in the high bit.
// A set bit means that leg is a noise polarization instead of a field.
struct ChannelWeights
{
    std::array<Tensor3, 8> weight;

    static int noise_legs(int mask);
};

ChannelWeights channel_decompose(const AtomModel& atom, const LegPermittivities& eps, double w, double wp,
                                 const UnitSystem& u);
ChannelWeights channel_decompose(const AtomModel& atom, const PermittivityModel& host, double w, double wp,
                                 const UnitSystem& u);

// D~*(e1) D~*(e2) D~(e3) chi2
Tensor3 chi2_lfc(const AtomModel& atom, const LegPermittivities& eps, double w, double wp, const UnitSystem& u);

// |weight| times the noise amplitude of every noise leg.
std::array<double, 8> channel_magnitudes(const ChannelWeights& cw, const LegPermittivities& eps,
                                         const UnitSystem& u);

struct AbsorptionReport
{
    std::vector<double> scales;
    std::vector<std::array<double, 8>> magnitudes;
    std::array<double, 8> exponents{};  // fitted log-log slopes; channel 0 left at 0
    std::array<double, 8> at_zero{};    // magnitudes at t = 0
    double channel0_gap = 0.0;          // |w000 - eps0 chi2_lfc| / |eps0 chi2_lfc| at t = 0
};

AbsorptionReport vanishing_absorption_limit(const AtomModel& atom, const PermittivityModel& host, double w,
                                            double wp, const std::vector<double>& scales, const UnitSystem& u);

// A discretized mode set. Every mode is one (position, frequency, polarization) bin.
struct Mode
{
    double frequency;
    Vec3 position = Vec3::Zero();
    int polarization = 0;
};

class ModeGrid
{
public:
    explicit ModeGrid(std::vector<Mode> modes);
    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }

private:
    std::vector<Mode> modes_;
};

// K f+_a f+_b f_c with w_a + w_b = w_c.
struct ModeTriple
{
    int a, b, c;
    cplx k;
};

// Throws DomainError unless the frequencies of the triple conserve energy.
ModeTriple make_triple(const ModeGrid& grid, int a, int b, int c, cplx k);

// Number of Fock states of `modes` modes with at most `max_total` quanta.
std::size_t fock_dimension(std::size_t modes, int max_total);

// -hbar sum K f+_a f+_b f_c + h.c. on the truncated number basis.
Eigen::SparseMatrix<cplx> hamiltonian_matrix(const ModeGrid& grid, const std::vector<ModeTriple>& triples,
                                             int max_total, const UnitSystem& u);

// Fock basis in the order used by hamiltonian_matrix.
std::vector<std::vector<int>> fock_basis(std::size_t modes, int max_total);

// ||H - H^dagger||_F / ||H||_F (0 for the zero matrix).
double hermiticity_defect(const Eigen::SparseMatrix<cplx>& h);

}  // namespace lfpdc
