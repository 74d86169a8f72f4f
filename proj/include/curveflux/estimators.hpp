#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curveflux/channel.hpp"
#include "curveflux/steiner.hpp"

namespace curveflux {

enum class Method {
    Zeroth,
    Linear,
    Quadratic,
    Zwanzig,
    Bradley,
    RegueraRubi,
    KalinayPercus,
    DagdugPineda,
};

// Tag names as they appear in configs and CSV headers.
const char* method_name(Method m);
std::optional<Method> parse_method(const std::string& tag);

struct EstimateDiagnostics {
    Complex D1{}, D2{};
    Complex p{};                      // tangent-line pole (Linear)
    std::optional<SteinerMap> map;    // wall-circle map (Quadratic)
    double validity_margin = 0.0;     // min of 1 - s k over the fiber
    std::vector<std::string> warnings;
};

// Zeroth-order estimate for locally constant cross-section,
//   D = D0/(k w) * 1/(1 - k v0) * log((1 - k(v0 - w/2))/(1 - k(v0 + w/2))),
// with the analytic |k w| -> 0 limit below 1e-8.  Level sets are k*w = const
// for symmetric channels.  Throws FocalPointError/ValidityError when a wall
// reaches the focal set.
double d_zeroth(const ChannelSpec& spec, double u);

// First-order estimate: walls replaced by their tangent lines meeting at p,
// P(z) = log(z - p); D = D0 Im(D1)/Re(D2) with D1 = log(a2-p) - log(a1-p) and
// D2 = R + (Q2 - Q1) log((a2-p)/(a1-p)).  For |k| < 1e-12 this reduces to the
// Dagdug-Pineda form.  Parallel distinct tangents with k != 0 raise
// NoIntersectionError; a zero-width station raises DegeneratePairError (a
// valid channel cannot have coincident tangents at distinct wall points).
double d_linear(const ChannelSpec& spec, double u, EstimateDiagnostics* diag = nullptr);

// Second-order estimate: walls replaced by their curvature circles and P by
// the Steiner log potential of the pair.  Straight walls (|k_i| < 1e-12) fall
// back to a circle of radius 1e8 * channel scale, recorded in the warnings.
double d_quadratic(const ChannelSpec& spec, double u, EstimateDiagnostics* diag = nullptr);

// Classical baselines as functions of the centerline slope y0' and width
// slope w':
//   Zwanzig        D0 / (1 + w'^2/12)
//   Bradley        D0 / (1 + y0'^2 + w'^2/12)
//   RegueraRubi    D0 * (1 + w'^2/4)^{-1/3}
//   KalinayPercus  D0 * arctan(w'/2)/(w'/2)
//   DagdugPineda   D0 * (arctan(y0' + w'/2) - arctan(y0' - w'/2))/w'
// The arctan forms switch to their series below |w'| = 1e-5.
double d_classical(Method method, double y0p, double wp, double d0);

struct DiffusionProfile {
    Method method;
    std::vector<double> u;
    std::vector<double> D;  // NaN where the estimator failed
    std::vector<std::pair<double, std::string>> errors;  // (u, message)
};

// Evaluates one method at one station.  Classical baselines require a straight
// base curve (they are straight-line formulas) and throw DomainError otherwise.
double eval_method(const ChannelSpec& spec, Method method, double u);

// Evaluates the method at n uniform stations; per-point failures are recorded
// with the offending u and leave NaN in the profile.
DiffusionProfile profile(const ChannelSpec& spec, Method method, int n);

// One station of the tangent-line configuration, decoupled from ChannelSpec so
// the Fig. 8 sweep can feed the worked-example geometry directly.
struct LinearStation {
    Complex alpha0, alpha1, alpha2;
    Complex d1, d2;  // wall velocities alpha1', alpha2'
    Complex T, N;
    double k;
    Complex f;             // base focal point (k != 0)
    std::optional<Complex> p;  // tangent intersection if already known
};

// Shared evaluation core for d_linear and the sweep.  Returns the estimate;
// diagnostics are optional.
double linear_station_eval(const LinearStation& st, double d0, EstimateDiagnostics* diag);

// D(k; m1, m2) for the worked example: base circle alpha(u) = (i/k)(1 - e^{iku}),
// straight walls through p = -1 with slopes m1, m2; evaluated at u = 0.
// Invalid or singular samples come back as +infinity.
double fig8_sample(double k, double m1, double m2, double d0);

}  // namespace curveflux
