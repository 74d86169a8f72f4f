#pragma once

#include <vector>

namespace curveflux {

// Uniform tensor grid on [u1, u2] x [-1, 1].  nu, nv count nodes, the walls
// v = -1 and v = +1 and the ends u = u1, u2 lie on the grid.  nv must be odd
// (>= 5) so Simpson weights apply on every fiber; nu >= 8.
struct Grid2D {
    double u1 = 0.0, u2 = 1.0;
    int nu = 0, nv = 0;

    double du() const { return (u2 - u1) / (nu - 1); }
    double dv() const { return 2.0 / (nv - 1); }
    double u(int i) const { return u1 + i * du(); }
    double v(int j) const { return -1.0 + j * dv(); }
    int nodes() const { return nu * nv; }
};

// Scalar field sampled at the grid nodes, row-major in u: value(i, j) is the
// node at (u_i, v_j).
struct SteadyField {
    Grid2D grid;
    std::vector<double> P;

    double& at(int i, int j) { return P[static_cast<std::size_t>(i) * grid.nv + j]; }
    double at(int i, int j) const { return P[static_cast<std::size_t>(i) * grid.nv + j]; }
};

}  // namespace curveflux
