#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "curveflux/channel.hpp"
#include "curveflux/errors.hpp"
#include "curveflux/field.hpp"
#include "doctest.h"

using namespace curveflux;

namespace {

ChannelSpec strip_spec(double w = 1.0, double d0 = 1.0) {
    return {PlaneCurve::line({1.0, 0.0}, {0.0, 0.0}, 0.0, 1.0), Profile1D::poly({0.0}),
            Profile1D::poly({w}), d0};
}

// k = 1 circle of radius 1 around (0, 1); wall radii are 1 -+ s
ChannelSpec annulus_spec(double v0, double w, double d0 = 1.0) {
    return {PlaneCurve::circle(1.0, {0.0, 1.0}, 0.0, 0.0, 1.0), Profile1D::poly({v0}),
            Profile1D::poly({w}), d0};
}

}  // namespace

TEST_CASE("polynomial profile") {
    const Profile1D p = Profile1D::poly({1.0, -2.0, 3.0});
    CHECK(p.value(0.5) == 1.0 - 1.0 + 0.75);
    CHECK(p.deriv(0.5) == -2.0 + 3.0);
    CHECK(p.deriv2(0.5) == 6.0);
    CHECK(p.is_poly());
    CHECK(Profile1D().value(7.0) == 0.0);
}

TEST_CASE("sampled profile interpolates sin") {
    const int n = 101;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::sin(2.0 * i / (n - 1));
    const Profile1D p = Profile1D::samples(v, 0.0, 2.0);
    for (double u : {0.0, 0.013, 0.5, 1.337, 2.0}) {
        CHECK(p.value(u) == doctest::Approx(std::sin(u)).scale(1.0).epsilon(1e-7));
        CHECK(p.deriv(u) == doctest::Approx(std::cos(u)).scale(1.0).epsilon(1e-4));
        CHECK(p.deriv2(u) == doctest::Approx(-std::sin(u)).scale(1.0).epsilon(5e-3));
    }
    CHECK_THROWS_AS(Profile1D::samples({1.0, 2.0, 3.0}, 0.0, 1.0), DomainError);
}

TEST_CASE("walls and sigma on the annulus") {
    const ChannelSpec spec = annulus_spec(0.25, 0.5);
    CHECK(sigma(spec, 0.3) == doctest::Approx(0.5 * 0.75).epsilon(1e-14));

    const WallData wd = walls(spec, 0.3);
    CHECK(wd.v0 == 0.25);
    CHECK(wd.w == 0.5);
    // lower wall offset v0 - w/2 = 0 puts alpha1 on the base curve
    CHECK(std::abs(wd.alpha1 - spec.base.position(0.3)) < 1e-14);
    CHECK(std::abs(wd.dalpha1 - wd.frame.T) < 1e-14);
    // upper wall: radius 1 - 0.5, speed |1 - s2 k| = 0.5
    CHECK(std::abs(wd.alpha2 - Complex{0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(wd.dalpha2 - 0.5 * wd.frame.T) < 1e-13);
    // middle curve alpha0 between them
    CHECK(std::abs(wd.alpha0 - (spec.base.position(0.3) + 0.25 * wd.frame.N)) < 1e-14);

    CHECK_THROWS_AS((void)walls(annulus_spec(0.0, -1.0), 0.5), ValidityError);
}

TEST_CASE("jacobian respects the validity margin") {
    const ChannelSpec spec = annulus_spec(0.0, 1.0);
    // det(phi') = (1 - s k) w/2 with s = v/2
    CHECK(jacobian(spec, 0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(jacobian(spec, 0.5, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(jacobian(spec, 0.5, -1.0) == doctest::Approx(0.75).epsilon(1e-14));
    // upper wall at s = 1 - 1e-7 sits inside the margin
    CHECK_THROWS_AS((void)jacobian(annulus_spec(0.0, 2.0 - 2e-7), 0.5, 1.0), ValidityError);
}

TEST_CASE("area integrates sigma") {
    ChannelSpec spec = strip_spec();
    spec.w = Profile1D::poly({1.0, 1.0});  // w = 1 + u
    CHECK(area(spec, 1.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(area(spec, 0.0) == 0.0);
    CHECK_THROWS_AS((void)area(spec, -0.1), DomainError);
}

TEST_CASE("find_validity_violation") {
    CHECK(!find_validity_violation(annulus_spec(0.0, 1.0)));

    // width 0.6 - u turns negative past u = 0.6
    ChannelSpec pinch = strip_spec();
    pinch.w = Profile1D::poly({0.6, -1.0});
    const auto bad = find_validity_violation(pinch);
    REQUIRE(bad.has_value());
    CHECK(*bad >= 0.6);
    CHECK(*bad <= 0.602);

    // wall past the focal set from the start
    const auto bad2 = find_validity_violation(annulus_spec(0.0, 2.2));
    REQUIRE(bad2.has_value());
    CHECK(*bad2 == 0.0);
}

TEST_CASE("effective density and flux on a linear strip field") {
    const ChannelSpec spec = strip_spec(1.0, 2.0);
    const Grid2D grid{0.0, 1.0, 9, 9};
    SteadyField f{grid, std::vector<double>(static_cast<std::size_t>(grid.nodes()))};
    for (int i = 0; i < grid.nu; ++i)
        for (int j = 0; j < grid.nv; ++j) f.at(i, j) = 2.0 - 3.0 * grid.u(i);

    const std::vector<double> p = effective_density(f, spec);
    const std::vector<double> j = effective_flux(f, spec);
    for (int i = 0; i < grid.nu; ++i) {
        CHECK(p[i] == doctest::Approx(2.0 - 3.0 * grid.u(i)).epsilon(1e-13));
        // P_u = -3, j = -D0 * integral of P_u (w/2) dv = 3 D0
        CHECK(j[i] == doctest::Approx(6.0).epsilon(1e-12));
    }
}

TEST_CASE("effective flux of the exact annulus solution") {
    // P = polar angle = u: harmonic, no flux through the walls, and
    // j = -integral of (w/2)/(1 - s k) dv = -log 3 exactly
    const ChannelSpec spec = annulus_spec(0.0, 1.0);
    const Grid2D grid{0.0, 1.0, 9, 65};
    SteadyField f{grid, std::vector<double>(static_cast<std::size_t>(grid.nodes()))};
    for (int i = 0; i < grid.nu; ++i)
        for (int j = 0; j < grid.nv; ++j) f.at(i, j) = grid.u(i);

    const std::vector<double> p = effective_density(f, spec);
    const std::vector<double> j = effective_flux(f, spec);
    for (int i = 0; i < grid.nu; ++i) {
        CHECK(p[i] == doctest::Approx(grid.u(i)).scale(1.0).epsilon(1e-13));
        // Simpson on 1/(1 - v/2) at nv = 65 is accurate to ~5e-7
        CHECK(j[i] == doctest::Approx(-std::log(3.0)).epsilon(1e-5));
    }
}
