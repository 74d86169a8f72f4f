#include "curveflux/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "curveflux/errors.hpp"
#include "interp.hpp"

namespace curveflux {
namespace {

constexpr Complex kImag{0.0, 1.0};
using detail::lagrange4_basis;

}  // namespace

PlaneCurve PlaneCurve::line(Complex direction, Complex origin, double u1, double u2) {
    if (!(u1 < u2)) throw DomainError("line: u1 must be < u2");
    const double mag = std::abs(direction);
    if (mag < 1e-12) throw DomainError("line: direction must be nonzero");
    PlaneCurve c;
    c.kind_ = Kind::Line;
    c.u1_ = u1;
    c.u2_ = u2;
    c.origin_ = origin;
    c.direction_ = direction / mag;
    return c;
}

PlaneCurve PlaneCurve::circle(double k, Complex focal_center, double phase,
                              double u1, double u2) {
    if (!(u1 < u2)) throw DomainError("circle: u1 must be < u2");
    if (std::abs(k) < 1e-12) throw DomainError("circle: curvature too small, use line");
    PlaneCurve c;
    c.kind_ = Kind::Circle;
    c.u1_ = u1;
    c.u2_ = u2;
    c.k_ = k;
    c.phase_ = phase;
    c.focal_ = focal_center;
    return c;
}

PlaneCurve PlaneCurve::sampled(std::vector<Complex> positions, double u1, double du) {
    if (positions.size() < 4) throw DomainError("sampled: need at least 4 positions");
    if (!(du > 0)) throw DomainError("sampled: du must be positive");
    PlaneCurve c;
    c.kind_ = Kind::SampledArc;
    c.u1_ = u1;
    c.u2_ = u1 + du * static_cast<double>(positions.size() - 1);
    c.pts_ = std::move(positions);
    c.du_ = du;
    return c;
}

void PlaneCurve::check_domain(double u) const {
    const double tol = 1e-9 * (1.0 + u2_ - u1_);
    if (u < u1_ - tol || u > u2_ + tol)
        throw DomainError("parameter outside curve domain");
}

int PlaneCurve::stencil_base(double u) const {
    const int n = static_cast<int>(pts_.size());
    int idx = static_cast<int>(std::floor((u - u1_) / du_));
    return std::clamp(idx - 1, 0, n - 4);
}

Complex PlaneCurve::position(double u) const {
    check_domain(u);
    switch (kind_) {
        case Kind::Line:
            return origin_ + direction_ * u;
        case Kind::Circle:
            return focal_ - kImag * std::exp(kImag * (k_ * u + phase_)) / k_;
        case Kind::SampledArc: {
            const int b = stencil_base(u);
            const double s = (u - u1_) / du_ - b;
            double l[4], dl[4], ddl[4];
            lagrange4_basis(s, l, dl, ddl);
            Complex p{};
            for (int i = 0; i < 4; ++i) p += l[i] * pts_[static_cast<std::size_t>(b + i)];
            return p;
        }
    }
    return {};
}

Complex PlaneCurve::derivative(double u) const {
    check_domain(u);
    switch (kind_) {
        case Kind::Line:
            return direction_;
        case Kind::Circle:
            return std::exp(kImag * (k_ * u + phase_));
        case Kind::SampledArc: {
            const int b = stencil_base(u);
            const double s = (u - u1_) / du_ - b;
            double l[4], dl[4], ddl[4];
            lagrange4_basis(s, l, dl, ddl);
            Complex d{};
            for (int i = 0; i < 4; ++i) d += dl[i] * pts_[static_cast<std::size_t>(b + i)];
            return d / du_;
        }
    }
    return {};
}

Complex PlaneCurve::second_derivative(double u) const {
    check_domain(u);
    switch (kind_) {
        case Kind::Line:
            return {};
        case Kind::Circle:
            return kImag * k_ * std::exp(kImag * (k_ * u + phase_));
        case Kind::SampledArc: {
            const int b = stencil_base(u);
            const double s = (u - u1_) / du_ - b;
            double l[4], dl[4], ddl[4];
            lagrange4_basis(s, l, dl, ddl);
            Complex d{};
            for (int i = 0; i < 4; ++i) d += ddl[i] * pts_[static_cast<std::size_t>(b + i)];
            return d / (du_ * du_);
        }
    }
    return {};
}

double PlaneCurve::curvature_rate(double u) const {
    check_domain(u);
    if (kind_ != Kind::SampledArc) return 0.0;
    // Central difference of the interpolated curvature; one-sided at the ends.
    const double h = du_;
    const double lo = std::max(u1_, u - h);
    const double hi = std::min(u2_, u + h);
    return (frenet(hi).k - frenet(lo).k) / (hi - lo);
}

FrenetFrame PlaneCurve::frenet(double u) const {
    const Complex d = derivative(u);
    const double speed = std::abs(d);
    if (speed < 1e-12) throw DomainError("frenet: zero speed");
    const Complex T = d / speed;
    const Complex dd = second_derivative(u);
    const double k = std::imag(std::conj(d) * dd) / (speed * speed * speed);
    return {T, kImag * T, k};
}

Complex PlaneCurve::focal_point(double u) const {
    const FrenetFrame fr = frenet(u);
    if (std::abs(fr.k) < 1e-12) throw FocalPointError("focal point at infinity (k ~ 0)");
    return position(u) + fr.N / fr.k;
}

FrenetFrame frenet(const PlaneCurve& curve, double u) { return curve.frenet(u); }

double curvature_general(const std::function<double(double)>& x,
                         const std::function<double(double)>& y, double t) {
    const double h = 1e-3 * std::max(1.0, std::abs(t));
    const double x1 = x(t - 2 * h), x2 = x(t - h), x3 = x(t), x4 = x(t + h), x5 = x(t + 2 * h);
    const double y1 = y(t - 2 * h), y2 = y(t - h), y3 = y(t), y4 = y(t + h), y5 = y(t + 2 * h);
    const double xp = (-x5 + 8 * x4 - 8 * x2 + x1) / (12 * h);
    const double yp = (-y5 + 8 * y4 - 8 * y2 + y1) / (12 * h);
    const double xpp = (-x5 + 16 * x4 - 30 * x3 + 16 * x2 - x1) / (12 * h * h);
    const double ypp = (-y5 + 16 * y4 - 30 * y3 + 16 * y2 - y1) / (12 * h * h);
    const double speed_sq = xp * xp + yp * yp;
    if (speed_sq < 1e-20) throw DomainError("curvature_general: zero speed");
    return (xp * ypp - yp * xpp) / (speed_sq * std::sqrt(speed_sq));
}

double offset_curvature(double k, double v) {
    const double denom = 1.0 - k * v;
    if (denom == 0.0) throw FocalPointError("offset passes through the focal point");
    return k / denom;
}

Complex focal_point(const PlaneCurve& curve, double u) { return curve.focal_point(u); }

PlaneCurve reparametrize_arclength(const std::vector<std::pair<double, Complex>>& samples) {
    const std::size_t n = samples.size();
    if (n < 4) throw DomainError("reparametrize_arclength: need at least 4 samples");
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        if (!(samples[i].first > samples[i - 1].first))
            throw DomainError("reparametrize_arclength: t must be strictly increasing");
        const double chord = std::abs(samples[i].second - samples[i - 1].second);
        if (chord <= 0.0)
            throw DomainError("reparametrize_arclength: coincident consecutive samples");
        s[i] = s[i - 1] + chord;
    }

    // Resample on a uniform arc-length grid via non-uniform 4-point Lagrange.
    const double ds = s.back() / static_cast<double>(n - 1);
    std::vector<Complex> resampled(n);
    resampled.front() = samples.front().second;
    resampled.back() = samples.back().second;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double target = ds * static_cast<double>(j);
        auto it = std::upper_bound(s.begin(), s.end(), target);
        std::size_t idx = static_cast<std::size_t>(it - s.begin());
        std::size_t base = std::clamp<std::size_t>(idx >= 2 ? idx - 2 : 0, 0, n - 4);
        Complex acc{};
        for (std::size_t a = 0; a < 4; ++a) {
            double w = 1.0;
            for (std::size_t b = 0; b < 4; ++b) {
                if (a == b) continue;
                w *= (target - s[base + b]) / (s[base + a] - s[base + b]);
            }
            acc += w * samples[base + a].second;
        }
        resampled[j] = acc;
    }
    return PlaneCurve::sampled(std::move(resampled), 0.0, ds);
}

}  // namespace curveflux
