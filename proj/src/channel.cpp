#include "curveflux/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "curveflux/errors.hpp"
#include "interp.hpp"

namespace curveflux {

Profile1D Profile1D::poly(std::vector<double> coefficients) {
    if (coefficients.empty()) throw DomainError("poly: need at least one coefficient");
    Profile1D p;
    p.poly_ = true;
    p.c_ = std::move(coefficients);
    return p;
}

Profile1D Profile1D::samples(std::vector<double> values, double u1, double u2) {
    if (values.size() < 4) throw DomainError("samples: need at least 4 values");
    if (!(u1 < u2)) throw DomainError("samples: u1 must be < u2");
    Profile1D p;
    p.poly_ = false;
    p.c_ = std::move(values);
    p.u1_ = u1;
    p.du_ = (u2 - u1) / static_cast<double>(p.c_.size() - 1);
    return p;
}

int Profile1D::stencil_base(double u) const {
    const int n = static_cast<int>(c_.size());
    int idx = static_cast<int>(std::floor((u - u1_) / du_));
    return std::clamp(idx - 1, 0, n - 4);
}

double Profile1D::value(double u) const {
    if (poly_) {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i];
        return acc;
    }
    const int b = stencil_base(u);
    const double s = (u - u1_) / du_ - b;
    double l[4], dl[4], ddl[4];
    detail::lagrange4_basis(s, l, dl, ddl);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += l[i] * c_[static_cast<std::size_t>(b + i)];
    return acc;
}

double Profile1D::deriv(double u) const {
    if (poly_) {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 1;)
            acc = acc * u + static_cast<double>(i) * c_[i];
        return acc;
    }
    const int b = stencil_base(u);
    const double s = (u - u1_) / du_ - b;
    double l[4], dl[4], ddl[4];
    detail::lagrange4_basis(s, l, dl, ddl);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += dl[i] * c_[static_cast<std::size_t>(b + i)];
    return acc / du_;
}

double Profile1D::deriv2(double u) const {
    if (poly_) {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 2;)
            acc = acc * u + static_cast<double>(i * (i - 1)) * c_[i];
        return acc;
    }
    const int b = stencil_base(u);
    const double s = (u - u1_) / du_ - b;
    double l[4], dl[4], ddl[4];
    detail::lagrange4_basis(s, l, dl, ddl);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += ddl[i] * c_[static_cast<std::size_t>(b + i)];
    return acc / (du_ * du_);
}

WallData walls(const ChannelSpec& spec, double u) {
    WallData wd;
    wd.frame = spec.base.frenet(u);
    wd.v0 = spec.v0.value(u);
    wd.w = spec.w.value(u);
    wd.dv0 = spec.v0.deriv(u);
    wd.dw = spec.w.deriv(u);
    if (!(wd.w > 0)) throw ValidityError("channel width must be positive");

    const Complex pos = spec.base.position(u);
    const Complex T = wd.frame.T, N = wd.frame.N;
    const double k = wd.frame.k;
    const double s1 = wd.v0 - wd.w / 2, s2 = wd.v0 + wd.w / 2;

    wd.alpha0 = pos + wd.v0 * N;
    wd.alpha1 = pos + s1 * N;
    wd.alpha2 = pos + s2 * N;
    wd.dalpha0 = (1.0 - wd.v0 * k) * T + wd.dv0 * N;
    wd.dalpha1 = (1.0 - s1 * k) * T + (wd.dv0 - wd.dw / 2) * N;
    wd.dalpha2 = (1.0 - s2 * k) * T + (wd.dv0 + wd.dw / 2) * N;
    return wd;
}

double sigma(const ChannelSpec& spec, double u) {
    const double w = spec.w.value(u);
    if (!(w > 0)) throw ValidityError("channel width must be positive");
    return w * (1.0 - spec.base.frenet(u).k * spec.v0.value(u));
}

double area(const ChannelSpec& spec, double u) {
    const double a = spec.u1();
    if (u < a) throw DomainError("area: u below the channel domain");
    if (u == a) return 0.0;
    const int panels = 1024;
    const double h = (u - a) / panels;
    double acc = sigma(spec, a) + sigma(spec, u);
    for (int i = 1; i < panels; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * sigma(spec, a + i * h);
    return acc * h / 3.0;
}

double jacobian(const ChannelSpec& spec, double u, double v) {
    const double w = spec.w.value(u);
    if (!(w > 0)) throw ValidityError("channel width must be positive");
    const double s = spec.v0.value(u) + v * w / 2;
    const double factor = 1.0 - s * spec.base.frenet(u).k;
    if (factor < kValidityMargin)
        throw ValidityError("channel reaches past the focal point (1 - s k < margin)");
    return factor * w / 2;
}

std::optional<double> find_validity_violation(const ChannelSpec& spec, int n) {
    // 1 - s k is linear in s, so checking both walls covers the fiber.
    for (int i = 0; i < n; ++i) {
        const double u = spec.u1() + (spec.u2() - spec.u1()) * i / (n - 1);
        const double w = spec.w.value(u);
        if (!(w > 0)) return u;
        const double k = spec.base.frenet(u).k;
        const double v0 = spec.v0.value(u);
        if (1.0 - (v0 - w / 2) * k < kValidityMargin) return u;
        if (1.0 - (v0 + w / 2) * k < kValidityMargin) return u;
    }
    return std::nullopt;
}

std::vector<double> effective_density(const SteadyField& field, const ChannelSpec& spec) {
    const Grid2D& g = field.grid;
    std::vector<double> p(static_cast<std::size_t>(g.nu));
    for (int i = 0; i < g.nu; ++i) {
        const double u = g.u(i);
        const double k = spec.base.frenet(u).k;
        const double v0 = spec.v0.value(u);
        const double w = spec.w.value(u);
        double acc = 0.0;
        for (int j = 0; j < g.nv; ++j) {
            const double s = v0 + g.v(j) * w / 2;
            const double det = (1.0 - s * k) * w / 2;
            const double simpson = (j == 0 || j == g.nv - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += simpson * field.at(i, j) * det;
        }
        p[static_cast<std::size_t>(i)] = acc * g.dv() / 3.0;
    }
    return p;
}

std::vector<double> effective_flux(const SteadyField& field, const ChannelSpec& spec) {
    const Grid2D& g = field.grid;
    const double du = g.du(), dv = g.dv();
    std::vector<double> j_out(static_cast<std::size_t>(g.nu));
    for (int i = 0; i < g.nu; ++i) {
        const double u = g.u(i);
        const double k = spec.base.frenet(u).k;
        const double v0 = spec.v0.value(u);
        const double w = spec.w.value(u);
        const double dv0 = spec.v0.deriv(u);
        const double dw = spec.w.deriv(u);
        double acc = 0.0;
        for (int jv = 0; jv < g.nv; ++jv) {
            const double v = g.v(jv);
            const double s = v0 + v * w / 2;
            const double su = dv0 + v * dw / 2;

            double pu;
            if (i == 0)
                pu = (-3 * field.at(0, jv) + 4 * field.at(1, jv) - field.at(2, jv)) / (2 * du);
            else if (i == g.nu - 1)
                pu = (3 * field.at(i, jv) - 4 * field.at(i - 1, jv) + field.at(i - 2, jv)) /
                     (2 * du);
            else
                pu = (field.at(i + 1, jv) - field.at(i - 1, jv)) / (2 * du);

            double pv;
            if (jv == 0)
                pv = (-3 * field.at(i, 0) + 4 * field.at(i, 1) - field.at(i, 2)) / (2 * dv);
            else if (jv == g.nv - 1)
                pv = (3 * field.at(i, jv) - 4 * field.at(i, jv - 1) + field.at(i, jv - 2)) /
                     (2 * dv);
            else
                pv = (field.at(i, jv + 1) - field.at(i, jv - 1)) / (2 * dv);

            const double integrand = (pu * (w / 2) - pv * su) / (1.0 - s * k);
            const double simpson = (jv == 0 || jv == g.nv - 1) ? 1.0 : (jv % 2 ? 4.0 : 2.0);
            acc += simpson * integrand;
        }
        j_out[static_cast<std::size_t>(i)] = -spec.d0 * acc * dv / 3.0;
    }
    return j_out;
}

}  // namespace curveflux
