#include "curveflux/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "curveflux/errors.hpp"
#include "curveflux/kernels.hpp"

namespace curveflux {
namespace {

constexpr double kGauss = 0.57735026918962576451;  // 1/sqrt(3)

// Symmetric banded matrix, lower triangle by columns:
// band[c*(bw+1) + r] = A[c+r][c], r = 0..bw.
struct BandMatrix {
    std::size_t n = 0;
    std::size_t bw = 0;
    std::vector<double> a;

    double& at(std::size_t col, std::size_t off) { return a[col * (bw + 1) + off]; }
    double at(std::size_t col, std::size_t off) const { return a[col * (bw + 1) + off]; }
    const double* col(std::size_t c) const { return a.data() + c * (bw + 1); }
    std::size_t height(std::size_t col) const { return std::min(bw, n - 1 - col); }
};

// In-place Cholesky A = L L^T; the column update and the substitutions run on
// the axpy/dot kernels.
void cholesky_factor(BandMatrix& m) {
    const auto& ops = kernels::active_ops();
    for (std::size_t c = 0; c < m.n; ++c) {
        const std::size_t h = m.height(c);
        double d = m.at(c, 0);
        if (!(d > 0)) throw SolverError("cholesky: matrix not positive definite");
        d = std::sqrt(d);
        m.at(c, 0) = d;
        for (std::size_t r = 1; r <= h; ++r) m.at(c, r) /= d;
        for (std::size_t p = 1; p <= h; ++p) {
            const double l = m.at(c, p);
            if (l != 0.0)
                ops.axpy(h - p + 1, -l, &m.at(c, p), &m.at(c + p, 0));
        }
    }
}

std::vector<double> cholesky_solve(const BandMatrix& m, std::vector<double> b) {
    const auto& ops = kernels::active_ops();
    for (std::size_t c = 0; c < m.n; ++c) {
        b[c] /= m.at(c, 0);
        const std::size_t h = m.height(c);
        if (h > 0) ops.axpy(h, -b[c], m.col(c) + 1, &b[c + 1]);
    }
    for (std::size_t c = m.n; c-- > 0;) {
        const std::size_t h = m.height(c);
        const double s = h > 0 ? ops.dot(h, m.col(c) + 1, &b[c + 1]) : 0.0;
        b[c] = (b[c] - s) / m.at(c, 0);
    }
    return b;
}

// Infinity-norm residual of the symmetric banded system, relative to
// ||A|| ||x|| + ||b||.
double relative_residual(const BandMatrix& m, const std::vector<double>& x,
                         const std::vector<double>& b) {
    std::vector<double> r(m.n, 0.0), row_sum(m.n, 0.0);
    for (std::size_t c = 0; c < m.n; ++c) {
        r[c] += m.at(c, 0) * x[c];
        row_sum[c] += std::abs(m.at(c, 0));
        const std::size_t h = m.height(c);
        for (std::size_t off = 1; off <= h; ++off) {
            const double v = m.at(c, off);
            r[c + off] += v * x[c];
            r[c] += v * x[c + off];
            row_sum[c + off] += std::abs(v);
            row_sum[c] += std::abs(v);
        }
    }
    double rn = 0.0, an = 0.0, xn = 0.0, bn = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        rn = std::max(rn, std::abs(r[i] - b[i]));
        an = std::max(an, row_sum[i]);
        xn = std::max(xn, std::abs(x[i]));
        bn = std::max(bn, std::abs(b[i]));
    }
    return rn / std::max(an * xn + bn, 1e-300);
}

}  // namespace

SteadyField solve_steady(const ChannelSpec& spec, const Grid2D& grid,
                         double p_left, double p_right) {
    const int nu = grid.nu, nv = grid.nv;
    if (nu < 8) throw DomainError("solve_steady: nu must be >= 8");
    if (nv < 5 || nv % 2 == 0) throw DomainError("solve_steady: nv must be odd and >= 5");
    const double tol = 1e-9 * (1.0 + spec.u2() - spec.u1());
    if (grid.u1 < spec.u1() - tol || grid.u2 > spec.u2() + tol || !(grid.u1 < grid.u2))
        throw DomainError("solve_steady: grid outside the channel domain");

    const std::size_t n = static_cast<std::size_t>(nu) * nv;
    const std::size_t bw = static_cast<std::size_t>(nv) + 1;
    BandMatrix m;
    m.n = n;
    m.bw = bw;
    m.a.assign(n * (bw + 1), 0.0);
    std::vector<double> rhs(n, 0.0);

    const double du = grid.du(), dv = grid.dv();

    // Channel data at the element Gauss abscissae in u (2 per element column).
    struct UData {
        double v0, w, dv0, dw, k;
    };
    std::vector<UData> udata(static_cast<std::size_t>(nu - 1) * 2);
    for (int i = 0; i < nu - 1; ++i) {
        for (int g = 0; g < 2; ++g) {
            const double xi = g == 0 ? -kGauss : kGauss;
            const double u = grid.u(i) + du * (xi + 1.0) / 2.0;
            udata[static_cast<std::size_t>(i) * 2 + g] = {
                spec.v0.value(u), spec.w.value(u), spec.v0.deriv(u), spec.w.deriv(u),
                spec.base.frenet(u).k};
        }
    }

    // Bilinear shape gradients at the four Gauss points, local node order
    // (i,j), (i+1,j), (i,j+1), (i+1,j+1).
    double dxi[2][2][4], deta[2][2][4];
    for (int gu = 0; gu < 2; ++gu) {
        for (int gv = 0; gv < 2; ++gv) {
            const double xi = gu == 0 ? -kGauss : kGauss;
            const double eta = gv == 0 ? -kGauss : kGauss;
            dxi[gu][gv][0] = -(1 - eta) / 4;
            dxi[gu][gv][1] = (1 - eta) / 4;
            dxi[gu][gv][2] = -(1 + eta) / 4;
            dxi[gu][gv][3] = (1 + eta) / 4;
            deta[gu][gv][0] = -(1 - xi) / 4;
            deta[gu][gv][1] = -(1 + xi) / 4;
            deta[gu][gv][2] = (1 - xi) / 4;
            deta[gu][gv][3] = (1 + xi) / 4;
        }
    }

    for (int i = 0; i < nu - 1; ++i) {
        for (int j = 0; j < nv - 1; ++j) {
            double K[4][4] = {};
            for (int gu = 0; gu < 2; ++gu) {
                const UData& ud = udata[static_cast<std::size_t>(i) * 2 + gu];
                for (int gv = 0; gv < 2; ++gv) {
                    const double eta = gv == 0 ? -kGauss : kGauss;
                    const double v = grid.v(j) + dv * (eta + 1.0) / 2.0;
                    const double s = ud.v0 + v * ud.w / 2;
                    const double su = ud.dv0 + v * ud.dw / 2;
                    const double om = 1.0 - s * ud.k;
                    if (om < kValidityMargin)
                        throw ValidityError("solve_steady: channel reaches the focal set");
                    const double ca = (ud.w / 2) / om;
                    const double cb = -su / om;
                    const double cc = (om * om + su * su) / (om * (ud.w / 2));
                    const double jac = (du / 2) * (dv / 2);
                    double gx[4], gy[4];
                    for (int a = 0; a < 4; ++a) {
                        gx[a] = dxi[gu][gv][a] * 2 / du;
                        gy[a] = deta[gu][gv][a] * 2 / dv;
                    }
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            K[a][b] += jac * (gx[a] * (ca * gx[b] + cb * gy[b]) +
                                              gy[a] * (cb * gx[b] + cc * gy[b]));
                }
            }
            const std::size_t gi[4] = {
                static_cast<std::size_t>(i) * nv + j, static_cast<std::size_t>(i + 1) * nv + j,
                static_cast<std::size_t>(i) * nv + j + 1,
                static_cast<std::size_t>(i + 1) * nv + j + 1};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (gi[a] >= gi[b]) m.at(gi[b], gi[a] - gi[b]) += K[a][b];
        }
    }

    // Dirichlet ends by row/column elimination; interior block stays SPD.
    auto constrain = [&](std::size_t c, double g) {
        for (std::size_t off = 1; off <= m.height(c); ++off) {
            rhs[c + off] -= m.at(c, off) * g;
            m.at(c, off) = 0.0;
        }
        for (std::size_t off = 1; off <= bw && off <= c; ++off) {
            rhs[c - off] -= m.at(c - off, off) * g;
            m.at(c - off, off) = 0.0;
        }
        m.at(c, 0) = 1.0;
        rhs[c] = g;
    };
    for (int j = 0; j < nv; ++j) constrain(static_cast<std::size_t>(j), p_left);
    for (int j = 0; j < nv; ++j)
        constrain(static_cast<std::size_t>(nu - 1) * nv + j, p_right);
    // constraint coupling may have dirtied constrained rhs entries; restore
    for (int j = 0; j < nv; ++j) rhs[static_cast<std::size_t>(j)] = p_left;
    for (int j = 0; j < nv; ++j) rhs[static_cast<std::size_t>(nu - 1) * nv + j] = p_right;

    const BandMatrix original = m;
    const std::vector<double> rhs0 = rhs;
    cholesky_factor(m);
    std::vector<double> x = cholesky_solve(m, std::move(rhs));

    const double rel = relative_residual(original, x, rhs0);
    if (rel > 1e-10) throw SolverError("solve_steady: residual check failed");

    SteadyField field;
    field.grid = grid;
    field.P = std::move(x);
    return field;
}

MeasuredD measure_D(const SteadyField& field, const ChannelSpec& spec) {
    const Grid2D& g = field.grid;
    const std::vector<double> p = effective_density(field, spec);
    const std::vector<double> j = effective_flux(field, spec);

    std::vector<double> phi(p.size()), sig(p.size());
    for (int i = 0; i < g.nu; ++i) {
        sig[static_cast<std::size_t>(i)] = sigma(spec, g.u(i));
        phi[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] / sig[static_cast<std::size_t>(i)];
    }
    double phi_scale = 1.0;
    for (double v : phi) phi_scale = std::max(phi_scale, std::abs(v));

    const double L = g.u2 - g.u1;
    const double lo = g.u1 + 0.1 * L, hi = g.u2 - 0.1 * L;

    MeasuredD out;
    for (int i = 1; i + 1 < g.nu; ++i) {
        const double u = g.u(i);
        if (u < lo || u > hi) continue;
        const double dphi = (phi[static_cast<std::size_t>(i + 1)] - phi[static_cast<std::size_t>(i - 1)]) / (2 * g.du());
        out.u.push_back(u);
        out.j.push_back(j[static_cast<std::size_t>(i)]);
        if (std::abs(dphi) < 1e-12 * phi_scale / L)
            out.D.push_back(std::numeric_limits<double>::quiet_NaN());
        else
            out.D.push_back(-j[static_cast<std::size_t>(i)] / (sig[static_cast<std::size_t>(i)] * dphi));
    }
    if (out.u.empty()) throw DomainError("measure_D: no interior stations");

    double sum = 0.0;
    for (double v : out.j) sum += v;
    out.j_mean = sum / static_cast<double>(out.j.size());
    double dev = 0.0;
    for (double v : out.j) dev = std::max(dev, std::abs(v - out.j_mean));
    out.flux_deviation = std::abs(out.j_mean) > 1e-300 ? dev / std::abs(out.j_mean) : dev;
    return out;
}

FJSolution fj_solve_steady(const ChannelSpec& spec, const std::vector<double>& u,
                           const std::vector<double>& D, double p_left, double p_right) {
    if (u.size() != D.size() || u.size() < 2)
        throw DomainError("fj_solve_steady: need matching u/D samples (>= 2)");
    std::vector<double> invg(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i > 0 && u[i] < u[i - 1])
            throw DomainError("fj_solve_steady: u must be non-decreasing");
        if (!(D[i] > 0) || !std::isfinite(D[i]))
            throw DomainError("fj_solve_steady: D samples must be positive and finite");
        invg[i] = 1.0 / (D[i] * sigma(spec, u[i]));
    }

    std::vector<double> rc(u.size(), 0.0);  // cumulative resistance
    for (std::size_t i = 1; i < u.size(); ++i)
        rc[i] = rc[i - 1] + (u[i] - u[i - 1]) * (invg[i - 1] + invg[i]) / 2.0;
    const double r_total = rc.back();
    if (!(r_total > 0) || !std::isfinite(r_total))
        throw SolverError("fj_solve_steady: degenerate total resistance");

    FJSolution out;
    out.J_tot = (p_left - p_right) / r_total;
    out.u = u;
    out.p.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out.p[i] = sigma(spec, u[i]) * (p_left - out.J_tot * rc[i]);
    return out;
}

std::vector<MethodReport> compare(const ChannelSpec& spec, const std::vector<Method>& methods,
                                  const Grid2D& grid) {
    const SteadyField field = solve_steady(spec, grid, 1.0, 0.0);
    const MeasuredD meas = measure_D(field, spec);

    std::vector<MethodReport> reports;
    reports.reserve(methods.size());
    for (Method m : methods) {
        MethodReport rep;
        rep.method = m;
        try {
            double max_err = 0.0, sum_err = 0.0;
            std::size_t counted = 0;
            for (std::size_t i = 0; i < meas.u.size(); ++i) {
                if (std::isnan(meas.D[i])) continue;
                const double est = eval_method(spec, m, meas.u[i]);
                const double rel = std::abs(est - meas.D[i]) / std::abs(meas.D[i]);
                max_err = std::max(max_err, rel);
                sum_err += rel;
                ++counted;
            }
            if (counted == 0) throw SolverError("compare: oracle D undefined everywhere");
            rep.max_rel_err = max_err;
            rep.mean_rel_err = sum_err / static_cast<double>(counted);

            std::vector<double> uf(static_cast<std::size_t>(grid.nu)),
                df(static_cast<std::size_t>(grid.nu));
            for (int i = 0; i < grid.nu; ++i) {
                uf[static_cast<std::size_t>(i)] = grid.u(i);
                df[static_cast<std::size_t>(i)] = eval_method(spec, m, grid.u(i));
            }
            const FJSolution fj = fj_solve_steady(spec, uf, df, 1.0, 0.0);
            rep.flux_rel_err = std::abs(fj.J_tot - meas.j_mean) /
                               std::max(std::abs(meas.j_mean), 1e-300);
        } catch (const Error& e) {
            rep.failed = true;
            rep.error = e.what();
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace curveflux
