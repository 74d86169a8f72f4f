#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace curveflux {

using Complex = std::complex<double>;

// Unit tangent/normal pair with signed curvature at a point of an arc-length
// parametrized curve.  The normal is the tangent rotated by +90 degrees,
// N = i*T, so the offset curve alpha + v*N has curvature k/(1 - k*v) and the
// focal point sits at alpha + N/k.
struct FrenetFrame {
    Complex T;
    Complex N;
    double k;
};

// Arc-length parametrized plane curve over a closed parameter interval.
//
//   Line:       alpha(u) = origin + direction*u            (|direction| = 1)
//   Circle:     alpha(u) = f - i*exp(i*(k*u + phase))/k    (focal center f)
//   SampledArc: uniformly spaced position samples; evaluation interpolates a
//               local cubic, so derivatives are O(h^3)/O(h^2) accurate.
class PlaneCurve {
public:
    enum class Kind { Line, Circle, SampledArc };

    // Default: the unit interval of the x axis.
    PlaneCurve() = default;

    static PlaneCurve line(Complex direction, Complex origin, double u1, double u2);
    static PlaneCurve circle(double k, Complex focal_center, double phase,
                             double u1, double u2);
    // positions[i] is the point at u = u1 + i*du; at least 4 samples.
    static PlaneCurve sampled(std::vector<Complex> positions, double u1, double du);

    Kind kind() const { return kind_; }
    double u_min() const { return u1_; }
    double u_max() const { return u2_; }

    Complex position(double u) const;
    Complex derivative(double u) const;
    Complex second_derivative(double u) const;
    // dk/du; identically zero for Line and Circle.
    double curvature_rate(double u) const;

    FrenetFrame frenet(double u) const;
    // alpha + N/k; throws FocalPointError when |k| < 1e-12.
    Complex focal_point(double u) const;

private:
    void check_domain(double u) const;
    // index of the leftmost node of the 4-point interpolation stencil at u
    int stencil_base(double u) const;

    Kind kind_ = Kind::Line;
    double u1_ = 0.0, u2_ = 1.0;
    // line
    Complex origin_{}, direction_{1.0, 0.0};
    // circle
    double k_ = 0.0, phase_ = 0.0;
    Complex focal_{};
    // sampled
    std::vector<Complex> pts_;
    double du_ = 0.0;
};

FrenetFrame frenet(const PlaneCurve& curve, double u);

// Signed curvature of a general (not arc-length) parametrization,
// (x'y'' - y'x'') / (x'^2 + y'^2)^{3/2}, derivatives by central differences.
// Throws DomainError when the speed vanishes at t.
double curvature_general(const std::function<double(double)>& x,
                         const std::function<double(double)>& y, double t);

// Curvature of the offset curve alpha + v*N: k/(1 - k*v).
// Throws FocalPointError when 1 - k*v = 0.
double offset_curvature(double k, double v);

Complex focal_point(const PlaneCurve& curve, double u);

// Rebuilds an arc-length parametrization from ordered (t, position) samples by
// accumulating chord length and resampling on a uniform grid of the same size.
// Requires at least 4 samples with strictly increasing t and nonzero steps.
PlaneCurve reparametrize_arclength(const std::vector<std::pair<double, Complex>>& samples);

}  // namespace curveflux
