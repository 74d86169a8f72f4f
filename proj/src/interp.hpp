#pragma once

// Internal helper: cubic Lagrange basis on nodes s = 0, 1, 2, 3 and its first
// two s-derivatives.  Shared by the sampled-curve and sampled-profile
// evaluators.

namespace curveflux::detail {

inline void lagrange4_basis(double s, double* l, double* dl, double* ddl) {
    l[0] = -(s - 1) * (s - 2) * (s - 3) / 6.0;
    l[1] = s * (s - 2) * (s - 3) / 2.0;
    l[2] = -s * (s - 1) * (s - 3) / 2.0;
    l[3] = s * (s - 1) * (s - 2) / 6.0;
    dl[0] = -((s - 2) * (s - 3) + (s - 1) * (s - 3) + (s - 1) * (s - 2)) / 6.0;
    dl[1] = ((s - 2) * (s - 3) + s * (s - 3) + s * (s - 2)) / 2.0;
    dl[2] = -((s - 1) * (s - 3) + s * (s - 3) + s * (s - 1)) / 2.0;
    dl[3] = ((s - 1) * (s - 2) + s * (s - 2) + s * (s - 1)) / 6.0;
    ddl[0] = 2.0 - s;
    ddl[1] = 3.0 * s - 5.0;
    ddl[2] = 4.0 - 3.0 * s;
    ddl[3] = s - 1.0;
}

}  // namespace curveflux::detail
