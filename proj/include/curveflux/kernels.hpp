#pragma once

#include <cstddef>

namespace curveflux::kernels {

// y[i] += a * x[i] for i in [0, n)
using AxpyFn = void (*)(std::size_t n, double a, const double* x, double* y);

// sum of x[i] * y[i] for i in [0, n)
using DotFn = double (*)(std::size_t n, const double* x, const double* y);

struct Ops {
    AxpyFn axpy;
    DotFn dot;
    const char* name;
};

// Reference implementation, plain loops.  Compiled with FP contraction off so
// the vector variants (which use separate mul/add, no FMA) match it bitwise on
// elementwise operations.
const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_available();
#endif

// Variant selected once per process from CPU features and the CURVEFLUX_SIMD
// environment variable ("auto", "scalar" or "avx2").  The selection never
// depends on thread count, so results are reproducible across CURVEFLUX_THREADS.
const Ops& active_ops();

}  // namespace curveflux::kernels
