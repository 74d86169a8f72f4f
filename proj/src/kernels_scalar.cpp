#include "curveflux/kernels.hpp"

namespace curveflux::kernels {
namespace {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{axpy_scalar, dot_scalar, "scalar"};
    return ops;
}

}  // namespace curveflux::kernels
