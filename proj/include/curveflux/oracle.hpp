#pragma once

#include <string>
#include <vector>

#include "curveflux/channel.hpp"
#include "curveflux/estimators.hpp"
#include "curveflux/field.hpp"

namespace curveflux {

// Steady state of the Laplace-Beltrami operator in channel coordinates,
//   d_u(a P_u + b P_v) + d_v(b P_u + c P_v) = 0,
//   a = (w/2)/(1-sk),  b = -s_u/(1-sk),  c = ((1-sk)^2 + s_u^2)/((1-sk) w/2),
// with Dirichlet values p_left/p_right on the u-ends and zero conormal flux at
// the walls.  Discretized with bilinear elements on the grid (the coefficient
// matrix has det = 1 pointwise, so the system is SPD) and solved by a banded
// Cholesky factorization; the relative residual is checked against 1e-10.
SteadyField solve_steady(const ChannelSpec& spec, const Grid2D& grid,
                         double p_left, double p_right);

struct MeasuredD {
    std::vector<double> u;  // interior stations (10% margins excluded)
    std::vector<double> D;  // -j / (sigma d(p/sigma)/du); NaN where flat
    std::vector<double> j;  // flux at the same stations
    double j_mean = 0.0;
    double flux_deviation = 0.0;  // max |j - mean|/|mean| over the interior
};

// Pointwise effective diffusion coefficient of a steady field.
MeasuredD measure_D(const SteadyField& field, const ChannelSpec& spec);

struct FJSolution {
    std::vector<double> u;
    std::vector<double> p;  // wall-to-wall density
    double J_tot = 0.0;     // steady flux, (p_left - p_right)/int du/(D sigma)
};

// Steady state of the reduced Fick-Jacobs equation for a sampled D(u).
// p_left/p_right prescribe p/sigma at the ends.  Repeated u nodes are allowed
// (zero-width intervals carry no resistance), so piecewise profiles can place
// a jump exactly on a node.
FJSolution fj_solve_steady(const ChannelSpec& spec, const std::vector<double>& u,
                           const std::vector<double>& D, double p_left, double p_right);

struct MethodReport {
    Method method;
    bool failed = false;
    std::string error;
    double max_rel_err = 0.0;
    double mean_rel_err = 0.0;
    double flux_rel_err = 0.0;
};

// Solves the oracle once on the grid and scores each estimator against the
// measured D(u) over the interior, plus the end-to-end flux against the
// reduced equation driven by the estimator profile.  Estimator failures are
// reported per method, not thrown.
std::vector<MethodReport> compare(const ChannelSpec& spec, const std::vector<Method>& methods,
                                  const Grid2D& grid);

}  // namespace curveflux
