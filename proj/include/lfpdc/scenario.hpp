#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfpdc/atom.hpp"
#include "lfpdc/effham.hpp"
#include "lfpdc/kk.hpp"
#include "lfpdc/lfc.hpp"
#include "lfpdc/media.hpp"
#include "lfpdc/units.hpp"

namespace lfpdc
{

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct Grids
{
    std::vector<std::pair<double, double>> chi2_pairs{{0.3, 0.4}, {0.5, 0.2}, {0.9, 0.7}};

    std::vector<cplx> mie_eps{cplx(2.0, 0.0), cplx(2.25, 0.1), cplx(3.0, 0.2)};
    std::vector<double> mie_z0;  // default: 10^-4 ... 10^-1.5 in steps of 10^0.25

    double kk_linear_half_width = 50.0;
    std::size_t kk_linear_points = 20001;

    double kk_nonlinear_half_width = 40.0;
    std::size_t kk_nonlinear_points = 4001;
    std::vector<std::pair<double, double>> kk_nonlinear_points_t{{0.7, 0.5}, {1.0, 0.5}, {0.3, 0.9}};
    std::vector<std::pair<double, double>> kk_nonlinear_points_atom{{0.3, 0.4}};
    TTermParams t_term{cplx(1.0, 0.0), 1.0, 0.2, 1.5, 0.2};

    std::vector<cplx> green_eps{cplx(1.0, 0.0), cplx(2.25, 0.1)};
    double green_frequency = 1.0;
    Vec3 green_source = Vec3(0.1, -0.2, 0.3);
    std::vector<Vec3> green_offsets{Vec3(3, 0, 0), Vec3(1, 2, 1), Vec3(-1.5, 0.7, 2), Vec3(0.5, -2.5, 1),
                                    Vec3(2, 2, -2)};
    double green_step = 1e-3;  // in units of c / (|sqrt eps| w)

    int k_tensor_samples = 20;
    GreenContext green_context = GreenContext::local_field;

    double channel_w = 0.6;
    double channel_wp = 0.5;
    std::vector<double> channel_scales{1e-1, 1e-2, 1e-3, 1e-4};

    std::vector<Mode> modes;  // default: pump/signal/idler built from channel_w, channel_wp
    int truncation = 2;
};

struct Scenario
{
    UnitSystem units;
    PermittivityModel media;
    AtomModel atom;
    CavityConfig cavity;
    Grids grids;
    std::map<std::string, double> tolerances;
    std::string hash;  // FNV-1a of the file bytes, hex

    double tol(const std::string& name) const;
};

std::map<std::string, double> default_tolerances();

// Parses and validates. Throws ParseError or ValidationError.
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace lfpdc
