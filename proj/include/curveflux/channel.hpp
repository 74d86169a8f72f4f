#pragma once

#include <optional>
#include <vector>

#include "curveflux/curve.hpp"
#include "curveflux/field.hpp"

namespace curveflux {

// Scalar profile along the channel, either a polynomial in u or uniform
// samples over [u1, u2] (interpolated by a local cubic, like SampledArc).
class Profile1D {
public:
    // Default: the zero polynomial.
    Profile1D() = default;

    static Profile1D poly(std::vector<double> coefficients);
    static Profile1D samples(std::vector<double> values, double u1, double u2);

    double value(double u) const;
    double deriv(double u) const;
    double deriv2(double u) const;
    bool is_poly() const { return poly_; }

private:
    int stencil_base(double u) const;

    bool poly_ = true;
    std::vector<double> c_{0.0};  // coefficients or sample values
    double u1_ = 0.0, du_ = 0.0;  // samples only
};

// Channel over the normal bundle of the base curve: points are
// phi(u, v) = alpha(u) + s(u, v) N(u) with s = v0 + v*w/2, v in [-1, 1].
// Walls sit at s = v0 -+ w/2; validity requires w > 0 and 1 - s*k >= margin.
struct ChannelSpec {
    PlaneCurve base;
    Profile1D v0;
    Profile1D w;
    double d0 = 1.0;

    double u1() const { return base.u_min(); }
    double u2() const { return base.u_max(); }
};

// Margin below which 1 - s*k counts as a validity violation.
inline constexpr double kValidityMargin = 1e-6;

// Centerline/wall points and their u-derivatives at one station:
//   alpha0' = (1 - v0 k) T + v0' N
//   alpha1' = (1 - (v0 - w/2) k) T + (v0' - w'/2) N
//   alpha2' = (1 - (v0 + w/2) k) T + (v0' + w'/2) N
struct WallData {
    Complex alpha0, alpha1, alpha2;
    Complex dalpha0, dalpha1, dalpha2;
    FrenetFrame frame;
    double v0, w, dv0, dw;
};

// Throws ValidityError if w(u) <= 0.
WallData walls(const ChannelSpec& spec, double u);

// Wall-to-wall effective cross-section, sigma = w (1 - k v0).
double sigma(const ChannelSpec& spec, double u);

// Integral of sigma from u1 to u (composite Simpson).
double area(const ChannelSpec& spec, double u);

// det(phi') = (1 - s k) w / 2; throws ValidityError when 1 - s k < margin.
double jacobian(const ChannelSpec& spec, double u, double v);

// Scans the domain on a uniform grid for w > 0 and wall validity margins;
// returns the first offending u if any.
std::optional<double> find_validity_violation(const ChannelSpec& spec, int n = 1001);

// p(u_i) = integral of P * det(phi') dv over the fiber (Simpson on the v grid).
std::vector<double> effective_density(const SteadyField& field, const ChannelSpec& spec);

// j(u_i) = -D0 * integral of [P_u (w/2) - P_v s_u] / (1 - s k) dv, the flux of
// -D0 grad P through the fiber.  Grid derivatives are centered inside,
// one-sided second order at the edges.
std::vector<double> effective_flux(const SteadyField& field, const ChannelSpec& spec);

}  // namespace curveflux
