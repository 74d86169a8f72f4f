#include "curveflux/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curveflux/errors.hpp"
#include "curveflux/parallel.hpp"

namespace curveflux {
namespace {

constexpr Complex kImag{0.0, 1.0};

double cross2(Complex a, Complex b) { return std::imag(std::conj(a) * b); }

// Wraps an angle difference to (-pi, pi].
double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

// log((b - pole)/(a - pole)) continued along the straight segment from a to b;
// the closed forms integrate 1/(z - pole) along the fiber, so the branch must
// follow the fiber, not the principal cut.
Complex continuous_log_ratio(Complex a, Complex b, Complex pole, int steps = 8) {
    const double tol = 1e-12 * std::max(std::abs(a - pole), std::abs(b - pole));
    Complex acc{};
    Complex prev = a - pole;
    if (std::abs(prev) < tol) throw PoleError("fiber endpoint at a pole");
    for (int j = 1; j <= steps; ++j) {
        const Complex z = a + (b - a) * (static_cast<double>(j) / steps) - pole;
        if (std::abs(z) < tol) throw PoleError("fiber passes through a pole");
        acc += std::log(z / prev);
        prev = z;
    }
    return acc;
}

}  // namespace

double eval_method(const ChannelSpec& spec, Method m, double u) {
    switch (m) {
        case Method::Zeroth:
            return d_zeroth(spec, u);
        case Method::Linear:
            return d_linear(spec, u);
        case Method::Quadratic:
            return d_quadratic(spec, u);
        default:
            // The classical baselines are straight-line formulas; slopes of a
            // curved channel's walls are frame-dependent, so refuse them.
            if (std::abs(spec.base.frenet(u).k) > 1e-12)
                throw DomainError("classical baseline needs a straight base curve");
            return d_classical(m, spec.v0.deriv(u), spec.w.deriv(u), spec.d0);
    }
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Zeroth: return "zeroth";
        case Method::Linear: return "linear";
        case Method::Quadratic: return "quadratic";
        case Method::Zwanzig: return "zwanzig";
        case Method::Bradley: return "bradley";
        case Method::RegueraRubi: return "reguera-rubi";
        case Method::KalinayPercus: return "kalinay-percus";
        case Method::DagdugPineda: return "dagdug-pineda";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& tag) {
    for (Method m : {Method::Zeroth, Method::Linear, Method::Quadratic, Method::Zwanzig,
                     Method::Bradley, Method::RegueraRubi, Method::KalinayPercus,
                     Method::DagdugPineda}) {
        if (tag == method_name(m)) return m;
    }
    return std::nullopt;
}

double d_zeroth(const ChannelSpec& spec, double u) {
    const double k = spec.base.frenet(u).k;
    const double v0 = spec.v0.value(u);
    const double w = spec.w.value(u);
    if (!(w > 0)) throw ValidityError("channel width must be positive");
    const double margin = std::min(1.0 - (v0 - w / 2) * k, 1.0 - (v0 + w / 2) * k);
    if (margin <= 0) throw FocalPointError("wall at or past the focal set");
    if (margin < kValidityMargin) throw ValidityError("wall too close to the focal set");
    const double denom0 = 1.0 - k * v0;
    const double beta = k * w / (2.0 * denom0);
    if (std::abs(k * w) < 1e-8) {
        // log((1+b)/(1-b))/(2b) = 1 + b^2/3 + b^4/5 + ...
        const double b2 = beta * beta;
        return spec.d0 / (denom0 * denom0) * (1.0 + b2 / 3.0 + b2 * b2 / 5.0);
    }
    // log1p keeps full precision when k*w is small but above the series cut.
    return spec.d0 / (k * w * denom0) * (std::log1p(beta) - std::log1p(-beta));
}

double d_classical(Method method, double y0p, double wp, double d0) {
    switch (method) {
        case Method::Zwanzig:
            return d0 / (1.0 + wp * wp / 12.0);
        case Method::Bradley:
            return d0 / (1.0 + y0p * y0p + wp * wp / 12.0);
        case Method::RegueraRubi:
            return d0 / std::cbrt(1.0 + wp * wp / 4.0);
        case Method::KalinayPercus: {
            const double x = wp / 2.0;
            if (std::abs(wp) < 1e-5) {
                const double x2 = x * x;
                return d0 * (1.0 - x2 / 3.0 + x2 * x2 / 5.0);
            }
            return d0 * std::atan(x) / x;
        }
        case Method::DagdugPineda: {
            const double x = wp / 2.0, a = y0p;
            if (std::abs(wp) < 1e-5) {
                const double opa = 1.0 + a * a;
                return d0 * (1.0 / opa + x * x * (3.0 * a * a - 1.0) / (3.0 * opa * opa * opa));
            }
            return d0 * (std::atan(a + x) - std::atan(a - x)) / wp;
        }
        default:
            throw DomainError("d_classical: not a classical method");
    }
}

double linear_station_eval(const LinearStation& st, double d0, EstimateDiagnostics* diag) {
    const Complex d1 = st.d1, d2 = st.d2;
    const Complex a0 = st.alpha0, a1 = st.alpha1, a2 = st.alpha2;
    const double scale = std::max({1.0, std::abs(a1), std::abs(a2)});

    if (std::abs(st.k) < 1e-12) {
        // Straight base: the closed form reduces exactly to Dagdug-Pineda in
        // the wall slopes relative to T.
        const double c1r = std::real(std::conj(st.T) * d1);
        const double c2r = std::real(std::conj(st.T) * d2);
        if (c1r <= 1e-12 * std::abs(d1) || c2r <= 1e-12 * std::abs(d2))
            throw ValidityError("wall tangent has no forward component");
        const double m1 = std::imag(std::conj(st.T) * d1) / c1r;
        const double m2 = std::imag(std::conj(st.T) * d2) / c2r;
        const double y0p = (m1 + m2) / 2.0, wp = m2 - m1;
        if (diag) {
            diag->D1 = Complex{0.0, std::atan(m2) - std::atan(m1)};
            diag->D2 = Complex{wp, 0.0};
        }
        return d_classical(Method::DagdugPineda, y0p, wp, d0);
    }

    if (std::abs(a2 - a1) < 1e-12 * scale)
        throw DegeneratePairError("zero-width station");
    const Complex f = st.f;
    if (std::abs(a0 - f) < 1e-12 * scale)
        throw ValidityError("centerline at the focal point");

    Complex p;
    if (st.p) {
        p = *st.p;
    } else {
        const double cross = cross2(d1, d2);
        if (std::abs(cross) <= 1e-12 * std::abs(d1) * std::abs(d2))
            throw NoIntersectionError("parallel wall tangents with curved base");
        p = a1 + cross2(a2 - a1, d2) / cross * d1;
    }
    if (std::min(std::abs(a1 - p), std::abs(a2 - p)) < 1e-12 * scale)
        throw PoleError("tangent intersection on a wall");

    const Complex D1{std::log(std::abs(a2 - p)) - std::log(std::abs(a1 - p)),
                     wrap_angle(std::arg(d2) - std::arg(d1))};

    const Complex N2 = st.N * st.N;
    const Complex A = 2.0 * N2 * (a0 - f);
    const Complex R = st.k * (a0 - f - (f - p)) * ((a1 - f) * d1 - (a2 - f) * d2) / A;
    const Complex Q1 = st.k * (f - p - (a1 - f)) * (a2 - f) * (a1 - p) * d2 / (A * (a2 - a1));
    const Complex Q2 = st.k * (f - p - (a2 - f)) * (a1 - f) * (a2 - p) * d1 / (A * (a2 - a1));
    const Complex D2 = R + (Q2 - Q1) * continuous_log_ratio(a1, a2, p);

    if (diag) {
        diag->D1 = D1;
        diag->D2 = D2;
        diag->p = p;
    }
    return d0 * std::imag(D1) / std::real(D2);
}

double d_linear(const ChannelSpec& spec, double u, EstimateDiagnostics* diag) {
    const WallData wd = walls(spec, u);
    const double k = wd.frame.k;
    const double margin = std::min(1.0 - (wd.v0 - wd.w / 2) * k, 1.0 - (wd.v0 + wd.w / 2) * k);
    if (margin < kValidityMargin) throw FocalPointError("wall reaches the focal set");

    LinearStation st;
    st.alpha0 = wd.alpha0;
    st.alpha1 = wd.alpha1;
    st.alpha2 = wd.alpha2;
    st.d1 = wd.dalpha1;
    st.d2 = wd.dalpha2;
    st.T = wd.frame.T;
    st.N = wd.frame.N;
    st.k = k;
    st.f = std::abs(k) >= 1e-12 ? spec.base.position(u) + wd.frame.N / k : Complex{};

    const double D = linear_station_eval(st, spec.d0, diag);
    if (diag) diag->validity_margin = margin;
    return D;
}

double d_quadratic(const ChannelSpec& spec, double u, EstimateDiagnostics* diag) {
    const WallData wd = walls(spec, u);
    double k = wd.frame.k;
    const double s1 = wd.v0 - wd.w / 2, s2 = wd.v0 + wd.w / 2;
    const double margin = std::min(1.0 - s1 * k, 1.0 - s2 * k);
    if (margin < kValidityMargin) throw FocalPointError("wall reaches the focal set");

    std::vector<std::string> warnings;
    const double scale = std::max({1.0, std::abs(wd.alpha0), wd.w});
    const Complex T = wd.frame.T, N = wd.frame.N;
    const double kp = spec.base.curvature_rate(u);
    const double ddv0 = spec.v0.deriv2(u), ddw = spec.w.deriv2(u);

    // Curvature circle of a wall; straight walls get a far tangent circle.
    auto wall_circle = [&](Complex ai, Complex di, double si, double sip, double sipp,
                           const char* label) {
        const Complex ddi = (-2.0 * sip * k - si * kp) * T + ((1.0 - si * k) * k + sipp) * N;
        const double speed = std::abs(di);
        const double ki = std::imag(std::conj(di) * ddi) / (speed * speed * speed);
        const Complex Ni = kImag * di / speed;
        if (std::abs(ki) < 1e-12) {
            warnings.push_back(std::string(label) + " wall straight: far-circle fallback");
            const double r = 1e8 * scale;
            return std::pair<Complex, double>{ai + Ni * r, r};
        }
        return std::pair<Complex, double>{ai + Ni / ki, 1.0 / std::abs(ki)};
    };

    const auto [f1, r1] =
        wall_circle(wd.alpha1, wd.dalpha1, s1, wd.dv0 - wd.dw / 2, ddv0 - ddw / 2, "lower");
    const auto [f2, r2] =
        wall_circle(wd.alpha2, wd.dalpha2, s2, wd.dv0 + wd.dw / 2, ddv0 + ddw / 2, "upper");

    Complex f;
    if (std::abs(k) < 1e-12) {
        warnings.emplace_back("straight base: far-focal fallback");
        k = (k >= 0 ? 1.0 : -1.0) / (1e8 * scale);
    }
    f = spec.base.position(u) + N / k;

    const SteinerMap map = build_map({f1, r1, f2, r2});

    const Complex a0 = wd.alpha0, a1 = wd.alpha1, a2 = wd.alpha2;
    const Complex d1 = wd.dalpha1, d2 = wd.dalpha2;
    const Complex N2 = N * N;
    const Complex denomQ = 2.0 * N2 * (a2 - a1) * (a0 - f);
    const Complex denomR = 2.0 * N2 * (a0 - f);

    Complex D1, D2;
    if (map.mode == SteinerMap::Mode::Concentric) {
        const Complex g = map.g;
        const Complex L = continuous_log_ratio(a1, a2, g);
        D1 = kImag * L;
        const Complex Q = kImag * k *
                          ((a1 + g - 2.0 * f) * (a1 - g) * (a2 - f) * d2 -
                           (a2 + g - 2.0 * f) * (a2 - g) * (a1 - f) * d1) /
                          denomQ;
        const Complex R =
            kImag * k * (a0 + g - 2.0 * f) * ((a2 - f) * d2 - (a1 - f) * d1) / denomR;
        D2 = Q * L - R;
    } else {
        const Complex L2 = continuous_log_ratio(a1, a2, map.q2);
        const Complex L1 = continuous_log_ratio(a1, a2, map.q1);
        D1 = map.I * (L2 - L1);
        auto Q_at = [&](Complex z) {
            return map.I * k *
                   ((a1 + z - 2.0 * f) * (a1 - z) * (a2 - f) * d2 -
                    (a2 + z - 2.0 * f) * (a2 - z) * (a1 - f) * d1) /
                   denomQ;
        };
        const Complex R =
            map.I * k * (map.q2 - map.q1) * ((a2 - f) * d2 - (a1 - f) * d1) / denomR;
        D2 = Q_at(map.q2) * L2 - Q_at(map.q1) * L1 - R;
    }

    if (diag) {
        diag->D1 = D1;
        diag->D2 = D2;
        diag->map = map;
        diag->validity_margin = margin;
        diag->warnings = warnings;
    }
    return spec.d0 * std::imag(D1) / std::real(D2);
}

DiffusionProfile profile(const ChannelSpec& spec, Method method, int n) {
    if (n < 2) throw DomainError("profile: need at least 2 stations");
    DiffusionProfile out;
    out.method = method;
    out.u.resize(static_cast<std::size_t>(n));
    out.D.resize(static_cast<std::size_t>(n));
    std::vector<std::string> errs(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double u =
            spec.u1() + (spec.u2() - spec.u1()) * static_cast<double>(i) / (n - 1);
        out.u[i] = u;
        try {
            out.D[i] = eval_method(spec, method, u);
        } catch (const Error& e) {
            out.D[i] = std::numeric_limits<double>::quiet_NaN();
            errs[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errs.size(); ++i)
        if (!errs[i].empty()) out.errors.emplace_back(out.u[i], errs[i]);
    return out;
}

double fig8_sample(double k, double m1, double m2, double d0) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    try {
        if (std::abs(k) < 1e-12)
            return d_classical(Method::DagdugPineda, (m1 + m2) / 2.0, m2 - m1, d0);
        if (1.0 - k * m1 < kValidityMargin || 1.0 - k * m2 < kValidityMargin)
            return kInf;  // wall at or past the focal set
        if (std::abs(1.0 + k * m1) < 1e-9 || std::abs(1.0 + k * m2) < 1e-9)
            return kInf;  // projection onto l_k degenerates
        if (std::abs(m1 - m2) <= 1e-7 * std::max(1.0, std::abs(m1))) {
            // Zero opening angle: take the symmetric-slope limit (even in h).
            const double m = (m1 + m2) / 2.0, h = 1e-5;
            return fig8_sample(k, m - h, m + h, d0);
        }

        LinearStation st;
        st.alpha0 = kImag * ((m1 + m2) / 2.0);
        st.alpha1 = kImag * m1;
        st.alpha2 = kImag * m2;
        st.d1 = (1.0 + kImag * m1) * (1.0 - k * m1) / (1.0 + k * m1);
        st.d2 = (1.0 + kImag * m2) * (1.0 - k * m2) / (1.0 + k * m2);
        st.T = 1.0;
        st.N = kImag;
        st.k = k;
        st.f = kImag / k;
        st.p = Complex{-1.0, 0.0};

        const double D = linear_station_eval(st, d0, nullptr);
        return std::isfinite(D) ? D : kInf;
    } catch (const Error&) {
        return kInf;
    }
}

}  // namespace curveflux
