#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace lfpdc
{

using cplx = std::complex<double>;

// Uniform grid on [-L, L] with an odd number of points, so 0 is a node.
class FrequencyGrid
{
public:
    FrequencyGrid(double half_width, std::size_t n_points);

    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double half_width() const { return l_; }
    double operator[](std::size_t k) const { return -l_ + double(k) * h_; }
    std::vector<double> points() const;

    // Index of the node at w; throws DomainError if w is not a node.
    std::size_t index_of(double w) const;

private:
    double l_;
    std::size_t n_;
    double h_;
};

// P int f(w') / (w - w') dw' with w a grid node.
cplx pv_integral(const std::vector<cplx>& f, const FrequencyGrid& grid, double pole);

// Same, addressed by node index.
cplx pv_integral_at(const std::vector<cplx>& f, const FrequencyGrid& grid, std::size_t pole);

// Half-plane of analyticity of the response function. Functions analytic in the
// upper half-plane obey chi = (1/(i pi)) P int chi(w') / (w' - w); the relations
// written with (w - w') in the denominator hold for the lower half-plane.
enum class HalfPlane
{
    upper,
    lower
};

struct LinearKKOptions
{
    HalfPlane analytic_in = HalfPlane::upper;
    bool require_decay = true;
    double decay_tolerance = 1e-3;
};

struct LinearKKProfile
{
    std::vector<double> w;
    std::vector<cplx> value;
    std::vector<double> re_reconstructed;
    std::vector<double> im_reconstructed;
    double scale = 0.0;  // max |chi| on the grid
};

// Both reconstructions at every node with |w| <= L/2.
LinearKKProfile linear_kk_profile(const std::function<cplx(double)>& chi, const FrequencyGrid& grid,
                                  const LinearKKOptions& opt = {});

// max over |w| <= L/2 of the worst defect of the two relations, over max |chi|.
double linear_kk_residual(const std::function<cplx(double)>& chi, const FrequencyGrid& grid,
                          const LinearKKOptions& opt = {});

struct TTermParams
{
    cplx amplitude;
    double w_ab;
    double gamma_ab;
    double w_ad;
    double gamma_ad;

    void validate() const;
};

// A / ((w - w_ab - i G_ab)(w + w' - w_ad - i G_ad))
cplx t_term(const TTermParams& p, double w, double wp);

// The right-hand side of the nonlinear relation for a single T-term, from
// closing every contour in the upper half-plane.
cplx t_term_residue_identity(const TTermParams& p, double w, double wp);

struct NonlinearKKOptions
{
    bool require_decay = true;
    double decay_tolerance = 1e-2;
};

struct NonlinearKKParts
{
    cplx lhs;
    cplx double_pv;   // P int int chi / ((w~ - w)(w~' - w'))
    cplx single_w;    // P int chi(w~, w') / (w~ - w)
    cplx single_wp;   // P int chi(w, w~') / (w~' - w')
    cplx rhs;
};

NonlinearKKParts nonlinear_kk_parts(const std::function<cplx(double, double)>& chi, double w, double wp,
                                    const FrequencyGrid& grid, const NonlinearKKOptions& opt = {});

// |lhs - rhs| / |lhs|, or the absolute defect when lhs vanishes.
double nonlinear_kk_residual(const std::function<cplx(double, double)>& chi, double w, double wp,
                             const FrequencyGrid& grid, const NonlinearKKOptions& opt = {});

}  // namespace lfpdc
