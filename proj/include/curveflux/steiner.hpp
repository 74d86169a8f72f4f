#pragma once

#include <complex>

#include "curveflux/curve.hpp"

namespace curveflux {

struct CirclePair {
    Complex f1;  // center of C1
    double r1;
    Complex f2;  // center of C2
    double r2;
};

// Log potential whose imaginary part is constant on both circles of a pair:
//   TwoPole:     P(z) = I log((z - q2)/(z - q1)),  I = i (disjoint/nested, q
//                real) or 1 (intersecting, q imaginary)
//   Concentric:  P(z) = i log(z - g)
struct SteinerMap {
    enum class Mode { TwoPole, Concentric };

    Mode mode = Mode::TwoPole;
    Complex I{0.0, 1.0};
    Complex q1{}, q2{};  // poles (TwoPole)
    Complex g{};         // common center (Concentric)

    // diagnostics
    Complex q{};
    double c1 = 0.0, c2 = 0.0;
    int J = 1;
    bool j_flipped = false;  // sign table overridden by the level-set check
};

// q = sqrt((d^2 - (r1+r2)^2)(d^2 - (r2-r1)^2)) / (2d); real for disjoint or
// nested pairs, purely imaginary for intersecting ones, 0 at tangency.
// Throws DomainError for non-positive radii or d <= 0 (concentric pairs have
// no finite q; build_map handles them separately).
Complex steiner_q(double r1, double r2, double d);

// Builds the map for a circle pair.  Tangent or identical circles raise
// DegeneratePairError.  The J sign follows the configuration table
// (J = +1 iff (I=1 and d < c1) or (I=i and d < r1+r2)); if the resulting map
// fails the level-set check on the input circles the sign is flipped and the
// flip recorded in the diagnostics.
SteinerMap build_map(const CirclePair& pair);

// Throws PoleError within 1e-12 * scale of a pole.
Complex eval_P(const SteinerMap& map, Complex z);

// Max deviation of Im(P) from its median over n equispaced samples of the
// circle.  In the intersecting case Im(P) is the inscribed angle, constant
// only modulo pi along a circle through the poles, so deviations are folded
// modulo pi there; other modes use raw differences.
double level_deviation(const SteinerMap& map, Complex center, double radius, int n);

}  // namespace curveflux
