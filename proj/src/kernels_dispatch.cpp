#include "curveflux/kernels.hpp"

#include <cstdlib>
#include <string>

namespace curveflux::kernels {
namespace {

const Ops& select() {
    const char* env = std::getenv("CURVEFLUX_SIMD");
    const std::string want = env ? env : "auto";
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2") return avx2_ops();  // trust the caller; SIGILL is on them
    if (want == "auto" && avx2_available()) return avx2_ops();
#endif
    return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
    // Selected once per process so every caller sees the same kernels
    // regardless of thread count.
    static const Ops& ops = select();
    return ops;
}

}  // namespace curveflux::kernels
