#include "curveflux/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace curveflux::kernels {
namespace {

// mul + add (no FMA) keeps each lane bitwise equal to the scalar reference.
void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

// Lane-parallel accumulation; the reduction order differs from the scalar
// loop, so callers treat dot results as equal only up to rounding.
double dot_avx2(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double lane[4];
    _mm256_storeu_pd(lane, acc);
    double s = (lane[0] + lane[2]) + (lane[1] + lane[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{axpy_avx2, dot_avx2, "avx2"};
    return ops;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

}  // namespace curveflux::kernels

#endif
