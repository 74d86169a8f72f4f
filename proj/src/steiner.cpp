#include "curveflux/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "curveflux/errors.hpp"

namespace curveflux {
namespace {

constexpr Complex kImag{0.0, 1.0};

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Complex steiner_q(double r1, double r2, double d) {
    if (!(r1 > 0) || !(r2 > 0)) throw DomainError("steiner_q: radii must be positive");
    if (!(d > 0)) throw DomainError("steiner_q: center distance must be positive");
    const double q_sq =
        (d * d - (r1 + r2) * (r1 + r2)) * (d * d - (r2 - r1) * (r2 - r1)) / (4 * d * d);
    if (q_sq >= 0) return {std::sqrt(q_sq), 0.0};
    return {0.0, std::sqrt(-q_sq)};
}

SteinerMap build_map(const CirclePair& pair) {
    if (!(pair.r1 > 0) || !(pair.r2 > 0))
        throw DomainError("build_map: radii must be positive");
    const double scale =
        std::max({pair.r1, pair.r2, std::abs(pair.f1), std::abs(pair.f2)});
    const double d = std::abs(pair.f2 - pair.f1);

    if (d <= 1e-12 * scale) {
        if (std::abs(pair.r1 - pair.r2) <= 1e-12 * scale)
            throw DegeneratePairError("build_map: identical circles");
        SteinerMap m;
        m.mode = SteinerMap::Mode::Concentric;
        m.g = (pair.f1 + pair.f2) / 2.0;
        return m;
    }

    const Complex q = steiner_q(pair.r1, pair.r2, d);
    if (std::abs(q) < 1e-12 * scale)
        throw DegeneratePairError("build_map: tangent circles");

    const double r1 = pair.r1, r2 = pair.r2;
    // q^2 + r1^2 and q^2 + r2^2 are perfect squares, so take |.| directly and
    // let J carry the sign of c2.
    const double c1 = std::abs((d * d - (r2 * r2 - r1 * r1)) / (2 * d));
    const double c2mag = std::abs((d * d + (r2 * r2 - r1 * r1)) / (2 * d));
    const bool intersecting = (q.real() == 0.0);
    const int j_table =
        ((intersecting && d < c1) || (!intersecting && d < r1 + r2)) ? 1 : -1;

    auto make = [&](int j_sign) {
        SteinerMap m;
        m.mode = SteinerMap::Mode::TwoPole;
        m.I = intersecting ? Complex{1.0, 0.0} : kImag;
        m.q = q;
        m.c1 = c1;
        m.c2 = j_sign * c2mag;
        m.J = j_sign;
        const double denom = m.c2 - m.c1;
        if (std::abs(denom) < 1e-12 * scale) {
            m.q1 = m.q2 = {std::numeric_limits<double>::quiet_NaN(), 0.0};
            return m;
        }
        const Complex num0 = pair.f1 * m.c2 - pair.f2 * m.c1;
        const Complex dq = q * (pair.f2 - pair.f1);
        m.q1 = (num0 + dq) / denom;
        m.q2 = (num0 - dq) / denom;
        return m;
    };

    auto dev_of = [&](const SteinerMap& m) {
        if (std::isnan(m.q1.real())) return std::numeric_limits<double>::infinity();
        try {
            return std::max(level_deviation(m, pair.f1, pair.r1, 64),
                            level_deviation(m, pair.f2, pair.r2, 64));
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    SteinerMap primary = make(j_table);
    SteinerMap flipped = make(-j_table);
    const double dev_p = dev_of(primary);
    const double dev_f = dev_of(flipped);
    if (dev_f < dev_p || (std::isnan(dev_p) && std::isfinite(dev_f))) {
        flipped.j_flipped = true;
        return flipped;
    }
    return primary;
}

Complex eval_P(const SteinerMap& map, Complex z) {
    if (map.mode == SteinerMap::Mode::Concentric) {
        const double tol = 1e-12 * std::max(1.0, std::abs(map.g));
        if (std::abs(z - map.g) < tol) throw PoleError("eval_P: z at the log pole");
        return kImag * std::log(z - map.g);
    }
    const double tol = 1e-12 * std::max({1.0, std::abs(map.q1), std::abs(map.q2)});
    if (std::abs(z - map.q1) < tol || std::abs(z - map.q2) < tol)
        throw PoleError("eval_P: z at a pole");
    return map.I * std::log((z - map.q2) / (z - map.q1));
}

double level_deviation(const SteinerMap& map, Complex center, double radius, int n) {
    if (n < 4) throw DomainError("level_deviation: need at least 4 samples");
    if (!(radius > 0)) throw DomainError("level_deviation: radius must be positive");

    // Half-offset angles dodge poles sitting at symmetric angles; samples that
    // still come close to a pole are dropped (Im P is continuous across them
    // only modulo the branch structure, and they add no information).
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * std::numbers::pi * (j + 0.5) / n;
        const Complex z = center + std::polar(radius, th);
        if (map.mode == SteinerMap::Mode::TwoPole) {
            if (std::min(std::abs(z - map.q1), std::abs(z - map.q2)) < 1e-4 * radius)
                continue;
        } else if (std::abs(z - map.g) < 1e-4 * radius) {
            continue;
        }
        vals.push_back(std::imag(eval_P(map, z)));
    }
    if (vals.size() < static_cast<std::size_t>(n) / 2)
        throw DomainError("level_deviation: too many samples near poles");

    // With I = 1 the level is an inscribed angle, constant only modulo pi on a
    // circle through the poles; fold onto one representative before comparing.
    const bool fold =
        map.mode == SteinerMap::Mode::TwoPole && map.I == Complex{1.0, 0.0};
    if (fold) {
        const double ref = vals[0];
        for (double& v : vals) v = std::remainder(v - ref, std::numbers::pi);
    }
    const double med = median_of(vals);
    double dev = 0.0;
    for (double v : vals) dev = std::max(dev, std::abs(v - med));
    return dev;
}

}  // namespace curveflux
