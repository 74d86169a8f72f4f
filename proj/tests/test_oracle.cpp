#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "curveflux/channel.hpp"
#include "curveflux/errors.hpp"
#include "curveflux/oracle.hpp"
#include "doctest.h"

using namespace curveflux;

namespace {

ChannelSpec annulus(double v0, double w, double u2 = 1.0) {
    return {PlaneCurve::circle(1.0, {0.0, 1.0}, 0.0, 0.0, u2), Profile1D::poly({v0}),
            Profile1D::poly({w}), 1.0};
}

ChannelSpec straight(Profile1D v0, Profile1D w, double u2) {
    return {PlaneCurve::line({1.0, 0.0}, {0.0, 0.0}, 0.0, u2), std::move(v0),
            std::move(w), 1.0};
}

double max_err(const MeasuredD& m, double ref) {
    double e = 0.0;
    for (double d : m.D) e = std::max(e, std::abs(d - ref) / std::abs(ref));
    return e;
}

}  // namespace

TEST_CASE("solve_steady reproduces the linear strip mode exactly") {
    const ChannelSpec spec = straight(Profile1D::poly({0.0}), Profile1D::poly({1.0}), 2.0);
    const SteadyField f = solve_steady(spec, {0.0, 2.0, 32, 9}, 2.0, 0.0);
    const MeasuredD m = measure_D(f, spec);
    REQUIRE(!m.D.empty());
    CHECK(max_err(m, 1.0) < 1e-10);
    CHECK(m.flux_deviation < 1e-10);
    CHECK(m.j_mean == doctest::Approx(1.0).epsilon(1e-10));  // sigma * dp/du = 1
}

TEST_CASE("solve_steady validates its grid") {
    const ChannelSpec spec = straight(Profile1D::poly({0.0}), Profile1D::poly({1.0}), 2.0);
    CHECK_THROWS_AS((void)solve_steady(spec, {0.0, 2.0, 4, 9}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)solve_steady(spec, {0.0, 2.0, 32, 8}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)solve_steady(spec, {0.0, 2.0, 32, 3}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)solve_steady(spec, {-0.5, 2.0, 32, 9}, 1.0, 0.0), DomainError);
}

TEST_CASE("annulus oracle converges to log 3 at better than second order") {
    // azimuthal diffusion in the annulus r in [1/2, 3/2]; the exact mode is
    // P = c * theta, D_measured = log 3 independent of resolution up to
    // discretization of the flux integrals.
    const ChannelSpec spec = annulus(0.0, 1.0);
    const double ref = std::log(3.0);
    std::vector<double> errs;
    for (int nu : {64, 128, 256}) {
        const SteadyField f = solve_steady(spec, {0.0, 1.0, nu, nu / 8 + 1}, 1.0, 0.0);
        errs.push_back(max_err(measure_D(f, spec), ref));
    }
    CHECK(errs[0] < 2e-4);
    CHECK(errs[1] < 2e-5);
    CHECK(errs[2] < 1e-6);
    CHECK(std::log2(errs[0] / errs[1]) > 3.0);
    CHECK(std::log2(errs[1] / errs[2]) > 3.0);
}

TEST_CASE("sheared strip: constant width, drifting centerline") {
    // v0 = 0.3 u, w = 1: the exact mode is P = (1 + 0.09) u + 0.15 v (channel
    // coordinates), so D = 1/1.09 everywhere.  Bilinear elements represent it
    // exactly up to quadrature, leaving only boundary-layer contamination from
    // the flat Dirichlet ends; check the central third.
    const ChannelSpec spec = straight(Profile1D::poly({0.0, 0.3}), Profile1D::poly({1.0}), 6.0);
    const SteadyField f = solve_steady(spec, {0.0, 6.0, 384, 17}, 1.0, 0.0);
    const MeasuredD m = measure_D(f, spec);
    const double ref = 1.0 / 1.09;
    double worst = 0.0;
    for (size_t i = 0; i < m.u.size(); ++i)
        if (m.u[i] > 2.0 && m.u[i] < 4.0)
            worst = std::max(worst, std::abs(m.D[i] - ref) / ref);
    CHECK(worst < 1e-3);
    CHECK(m.flux_deviation < 1e-3);
}

TEST_CASE("asymmetric wedge against the exact polar mode") {
    // walls y = 0 and y = 0.8 x on [1, 60]: the exact steady mode is
    // P = c * arg(z), giving D = arctan(0.8)/0.8.  End effects decay like a
    // power of r, so measure well inside.
    const ChannelSpec spec =
        straight(Profile1D::poly({0.0, 0.4}), Profile1D::poly({0.0, 0.8}), 60.0);
    const SteadyField f = solve_steady(spec, {1.0, 60.0, 2048, 33}, 1.0, 0.0);
    const MeasuredD m = measure_D(f, spec);
    const double ref = std::atan(0.8) / 0.8;
    double worst = 0.0;
    int counted = 0;
    for (size_t i = 0; i < m.u.size(); ++i)
        if (m.u[i] > 6.0 && m.u[i] < 10.0) {
            worst = std::max(worst, std::abs(m.D[i] - ref) / ref);
            ++counted;
        }
    REQUIRE(counted > 10);
    CHECK(worst < 5e-3);
}

TEST_CASE("fj_solve_steady is a resistor chain") {
    const ChannelSpec spec = straight(Profile1D::poly({0.0}), Profile1D::poly({1.0}), 2.0);
    // sigma = 1; resistances 1/D du: piecewise D = 1 on [0,1], 2 on [1,2]
    const FJSolution sol =
        fj_solve_steady(spec, {0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 2.0, 2.0}, 3.0, 0.0);
    CHECK(sol.J_tot == doctest::Approx(2.0).epsilon(1e-12));  // 3 / (1 + 1/2)
    REQUIRE(sol.p.size() == 4);
    CHECK(sol.p.front() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.p[1] == doctest::Approx(1.0).epsilon(1e-12));  // drop 2 over R = 1
    CHECK(sol.p[2] == doctest::Approx(1.0).epsilon(1e-12));  // zero-width interval
    CHECK(sol.p.back() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        (void)fj_solve_steady(spec, {0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}, 1.0, 0.0),
        DomainError);
    CHECK_THROWS_AS((void)fj_solve_steady(spec, {0.0}, {1.0}, 1.0, 0.0), DomainError);
}

TEST_CASE("compare scores every estimator on the strip") {
    const ChannelSpec spec = straight(Profile1D::poly({0.0}), Profile1D::poly({1.0}), 2.0);
    const std::vector<Method> all = {Method::Zeroth,       Method::Linear,
                                     Method::Quadratic,    Method::Zwanzig,
                                     Method::Bradley,      Method::RegueraRubi,
                                     Method::KalinayPercus, Method::DagdugPineda};
    const auto reports = compare(spec, all, {0.0, 2.0, 64, 9});
    REQUIRE(reports.size() == all.size());
    for (const auto& r : reports) {
        CHECK(!r.failed);
        const double tol = r.method == Method::Quadratic ? 1e-4 : 1e-6;
        CHECK(r.max_rel_err < tol);
        CHECK(r.mean_rel_err <= r.max_rel_err);
        CHECK(std::abs(r.flux_rel_err) < tol);
    }
}

TEST_CASE("compare reports per-method failures on the annulus") {
    const ChannelSpec spec = annulus(0.0, 1.0);
    const auto reports = compare(
        spec, {Method::Zeroth, Method::Linear, Method::Quadratic, Method::Zwanzig},
        {0.0, 1.0, 128, 17});
    REQUIRE(reports.size() == 4);

    CHECK(!reports[0].failed);
    CHECK(reports[0].max_rel_err < 1e-4);
    CHECK(std::abs(reports[0].flux_rel_err) < 1e-4);

    // parallel wall tangents: the tangent-line construction has no pole
    CHECK(reports[1].failed);
    CHECK(reports[1].error.find("parallel") != std::string::npos);

    CHECK(!reports[2].failed);
    CHECK(reports[2].max_rel_err < 1e-4);

    // classical baseline on a curved base
    CHECK(reports[3].failed);
    CHECK(!reports[3].error.empty());
}

TEST_CASE("worked figure-8 station against the oracle") {
    // base circle k = 0.2 through the origin, straight walls through -1 with
    // slopes -+0.4; wall offsets solved from the line equations per station.
    const double k = 0.2;
    const PlaneCurve base = PlaneCurve::circle(k, {0.0, 1.0 / k}, 0.0, -0.9, 2.0);
    const int n = 4001;
    std::vector<double> lower(n), upper(n);
    for (int i = 0; i < n; ++i) {
        const double u = -0.9 + (2.0 + 0.9) * i / (n - 1);
        const Complex a = base.position(u);
        const FrenetFrame fr = base.frenet(u);
        auto offset = [&](double m) {
            return (m * (a.real() + 1.0) - a.imag()) /
                   (fr.N.imag() - m * fr.N.real());
        };
        lower[i] = offset(-0.4);
        upper[i] = offset(0.4);
    }
    std::vector<double> v0(n), w(n);
    for (int i = 0; i < n; ++i) {
        v0[i] = (lower[i] + upper[i]) / 2.0;
        w[i] = upper[i] - lower[i];
    }
    const ChannelSpec spec{base, Profile1D::samples(v0, -0.9, 2.0),
                           Profile1D::samples(w, -0.9, 2.0), 1.0};
    REQUIRE(!find_validity_violation(spec).has_value());

    const SteadyField f = solve_steady(spec, {-0.9, 2.0, 512, 65}, 1.0, 0.0);
    const MeasuredD m = measure_D(f, spec);
    REQUIRE(!m.u.empty());
    // station nearest u = 0, where the sweep sample lives
    size_t at = 0;
    for (size_t i = 0; i < m.u.size(); ++i)
        if (std::abs(m.u[i]) < std::abs(m.u[at])) at = i;
    const double d_meas = m.D[at];
    CHECK(d_meas == doctest::Approx(0.94947).epsilon(5e-3));

    // the sweep sample (normalized wall velocities) stays within 5 percent
    const double d_sweep = fig8_sample(k, -0.4, 0.4, 1.0);
    CHECK(std::abs(d_sweep - d_meas) / d_meas < 0.05);
    // the full tangent construction with true wall velocities does better
    const double d_lin = d_linear(spec, 0.0);
    CHECK(std::abs(d_lin - d_meas) / d_meas < 0.01);
}
